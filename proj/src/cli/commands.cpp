#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cli/config.hpp"
#include "cli/scenarios.hpp"
#include "darkwell/analysis.hpp"
#include "darkwell/batch.hpp"
#include "darkwell/darkbright.hpp"
#include "darkwell/dynamics.hpp"
#include "darkwell/wells.hpp"

namespace darkwell::cli {

namespace {

constexpr char kTrajectoryHeader[] =
    "t,re_b1,im_b1,re_b2,im_b2,re_b3,im_b3,p_left,p_right,p3,norm2,p_bright,p_dark";

Config load_config(const CommandOptions& opts, const std::string& main_section,
                   const std::string& out_key) {
    Config cfg;
    if (!opts.config_path.empty()) {
        cfg = Config::from_file(opts.config_path, main_section);
    }
    for (const std::string& kv : opts.overrides) {
        cfg.apply_override(kv, main_section);
    }
    if (!opts.out_path.empty()) cfg.set(out_key, opts.out_path);
    return cfg;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    return f;
}

struct AnalyticPrediction {
    double p_left = 0.0;
    double p_right = 0.0;
    std::string label;
};

// Closed-form expectation for a simulate run, when one exists.
std::optional<AnalyticPrediction> analytic_for_run(const RunSetup& setup,
                                                   const Amplitudes& init) {
    const SystemParams& p = setup.params;
    if (p.rabi_norm() > 0.0) {
        const Amplitudes dark = dark_state(p);
        const double dark_overlap = std::norm(inner(dark.vec(), init.vec()));
        if (dark_overlap > 1.0 - 1e-12) {
            const SplitProbability sp = dark_init_localization(p);
            return AnalyticPrediction{sp.p_left, sp.p_right,
                                      "dark-state localization (time-independent)"};
        }
        const double scale = std::max(1.0, p.max_frequency());
        if (p.gamma > 0.0 && std::abs(p.splitting()) <= 1e-12 * scale) {
            if (auto two = resolve_two_level(setup.init, p)) {
                const AsymptoticLocalization a = general_init_localization(*two, p);
                return AnalyticPrediction{a.p_left_inf, a.p_right_inf,
                                          "asymptotic localization (t -> infinity)"};
            }
        }
        return std::nullopt;
    }
    // field off: the lower doublet tunnels freely as long as it starts there
    if (auto two = resolve_two_level(setup.init, p)) {
        const SplitProbability sp = free_tunneling(*two, p.splitting(), setup.t_end);
        return AnalyticPrediction{sp.p_left, sp.p_right, "free tunneling at t_end"};
    }
    return std::nullopt;
}

void write_trajectory_csv(std::ofstream& f, const Trajectory& traj,
                          const SystemParams& p) {
    const double w = p.rabi_norm();
    const double c1 = w > 0.0 ? p.omega1_rabi / w : 0.0;
    const double c2 = w > 0.0 ? p.omega2_rabi / w : 0.0;
    const double nan = std::nan("");

    f << kTrajectoryHeader << '\n';
    for (const TrajectorySample& s : traj.samples) {
        double p_bright = nan, p_dark = nan;
        if (w > 0.0) {
            p_bright = std::norm(c1 * s.state.b1 + c2 * s.state.b2);
            p_dark = std::norm(c2 * s.state.b1 - c1 * s.state.b2);
        }
        f << g17(s.state.t) << ',' << g17(s.state.b1.real()) << ',' << g17(s.state.b1.imag())
          << ',' << g17(s.state.b2.real()) << ',' << g17(s.state.b2.imag()) << ','
          << g17(s.state.b3.real()) << ',' << g17(s.state.b3.imag()) << ','
          << g17(s.loc.p_left) << ',' << g17(s.loc.p_right) << ',' << g17(s.loc.p3) << ','
          << g17(s.norm2) << ',' << g17(p_bright) << ',' << g17(p_dark) << '\n';
    }
}

SystemParams params_at(const SweepSetup& setup, long i, long j) {
    SystemParams p = setup.base;
    const auto apply = [&p](const SweepAxis& ax, long idx) {
        const double v = ax.value_at(idx);
        if (ax.param == "omega1") {
            p.omega1_rabi = v;
        } else if (ax.param == "omega2") {
            p.omega2_rabi = v;
        } else {
            p.gamma = v;
        }
    };
    apply(setup.axes[0], i);
    if (setup.axes.size() == 2) apply(setup.axes[1], j);
    return p;
}

}  // namespace

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        Config cfg = load_config(opts, "run", "run.out");
        RunSetup setup = load_run_setup(cfg);

        const Amplitudes init = resolve_init(setup.init, setup.params);
        const double dt =
            setup.dt > 0.0 ? setup.dt : default_dt(setup.params, setup.t_end);
        long sample_every = setup.sample_every;
        if (sample_every == 0) {
            const long n_steps = static_cast<long>(std::ceil(setup.t_end / dt));
            sample_every = std::max<long>(1, n_steps / 2000);
        }

        const Trajectory traj =
            integrate(setup.params, init, setup.t_end, dt, sample_every);

        std::ofstream f = open_output(setup.out);
        write_trajectory_csv(f, traj, setup.params);

        if (!opts.quiet) {
            const TrajectorySample& last = traj.last();
            if (!setup.scenario.empty()) out << "scenario: " << setup.scenario << '\n';
            out << "params: omega1=" << g17(setup.params.omega1_rabi)
                << " omega2=" << g17(setup.params.omega2_rabi)
                << " delta1=" << g17(setup.params.delta1)
                << " delta2=" << g17(setup.params.delta2)
                << " gamma=" << g17(setup.params.gamma) << '\n';
            out << "steps: " << traj.samples.size() << " samples, dt_effective = "
                << g17(traj.dt_effective) << '\n';
            out << "final: t=" << g17(last.state.t) << " p_left=" << g17(last.loc.p_left)
                << " p_right=" << g17(last.loc.p_right) << " p3=" << g17(last.loc.p3)
                << " norm2=" << g17(last.norm2) << '\n';
            if (auto pred = analytic_for_run(setup, init)) {
                const double dev = std::max(std::abs(last.loc.p_left - pred->p_left),
                                            std::abs(last.loc.p_right - pred->p_right));
                out << "analytic: p_left=" << g17(pred->p_left)
                    << " p_right=" << g17(pred->p_right) << " [" << pred->label << "]\n";
                out << "deviation: " << g17(dev) << '\n';
            }
            out << "wrote " << setup.out << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SimError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        Config cfg = load_config(opts, "sweep", "sweep.out");
        SweepSetup setup = load_sweep_setup(cfg);

        const bool two_axes = setup.axes.size() == 2;
        const long n1 = setup.axes[0].count;
        const long n2 = two_axes ? setup.axes[1].count : 1;

        std::vector<SettleJob> jobs;
        jobs.reserve(static_cast<size_t>(n1 * n2));
        std::vector<AsymptoticLocalization> analytic(static_cast<size_t>(n1 * n2));
        for (long i = 0; i < n1; ++i) {
            for (long j = 0; j < n2; ++j) {
                const SystemParams p = params_at(setup, i, j);
                const auto two = resolve_two_level(setup.init, p);
                // c3 = 0 was validated at load; dark/bright resolve per point
                analytic[static_cast<size_t>(i * n2 + j)] =
                    general_init_localization(*two, p);
                SettleJob job;
                job.params = p;
                job.init = resolve_init(setup.init, p);
                job.eps = setup.eps;
                job.t_max = setup.t_max;
                job.dt = setup.dt;
                jobs.push_back(job);
            }
        }

        const std::vector<SettleResult> results =
            run_settle_batch(jobs, ExecPolicy::parallel);

        for (size_t k = 0; k < results.size(); ++k) {
            if (!results[k].ok) {
                const SystemParams& p = jobs[k].params;
                err << "numerical failure at grid point omega1="
                    << g17(p.omega1_rabi) << " omega2=" << g17(p.omega2_rabi)
                    << " gamma=" << g17(p.gamma) << ": " << results[k].message << '\n';
                return kExitNumerical;
            }
        }

        std::ofstream f = open_output(setup.out);
        f << setup.axes[0].param;
        if (two_axes) f << ',' << setup.axes[1].param;
        f << ",p_left_num,p_right_num,p_left_analytic,p_right_analytic,"
             "abs_dev_left,abs_dev_right\n";

        double max_dev = 0.0;
        for (long i = 0; i < n1; ++i) {
            for (long j = 0; j < n2; ++j) {
                const size_t k = static_cast<size_t>(i * n2 + j);
                const SettleResult& r = results[k];
                const AsymptoticLocalization& a = analytic[k];
                const double dev_l = std::abs(r.p_left - a.p_left_inf);
                const double dev_r = std::abs(r.p_right - a.p_right_inf);
                max_dev = std::max({max_dev, dev_l, dev_r});
                f << g17(setup.axes[0].value_at(i));
                if (two_axes) f << ',' << g17(setup.axes[1].value_at(j));
                f << ',' << g17(r.p_left) << ',' << g17(r.p_right) << ','
                  << g17(a.p_left_inf) << ',' << g17(a.p_right_inf) << ',' << g17(dev_l)
                  << ',' << g17(dev_r) << '\n';
            }
        }
        f << "# max_abs_deviation = " << g17(max_dev) << '\n';

        if (!opts.quiet) {
            out << "sweep: " << jobs.size() << " grid points, "
                << batch_thread_count() << " thread(s)\n";
            out << "max |numeric - analytic| = " << g17(max_dev) << '\n';
            out << "wrote " << setup.out << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SimError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int cmd_wells(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        Config cfg = load_config(opts, "well.ground", "report.out");
        WellsSetup setup = load_wells_setup(cfg);

        const WellSolution ground =
            solve_well(setup.ground.potential, setup.ground.n_points,
                       setup.ground.n_states);
        std::optional<WellSolution> excited;
        std::optional<RabiOverlaps> rabi;
        if (setup.excited) {
            excited = solve_well(setup.excited->potential, setup.excited->n_points,
                                 setup.excited->n_states);
            rabi = rabi_overlaps(ground, *excited, setup.mu_E, setup.excited_index);
        }

        std::ofstream f = open_output(setup.out);
        f << "solution,state,energy,parity\n";
        for (int k = 0; k < ground.n_states(); ++k) {
            f << "ground," << k << ',' << g17(ground.eigenvalues[k]) << ','
              << parity_name(ground.parity_flags[k]) << '\n';
        }
        if (excited) {
            for (int k = 0; k < excited->n_states(); ++k) {
                f << "excited," << k << ',' << g17(excited->eigenvalues[k]) << ','
                  << parity_name(excited->parity_flags[k]) << '\n';
            }
        }
        f << "# delta = " << g17(ground.delta) << '\n';
        if (rabi) {
            f << "# omega1 = " << g17(rabi->omega1) << '\n';
            f << "# omega2 = " << g17(rabi->omega2) << '\n';
            const double ratio = rabi->omega2 / rabi->omega1;
            f << "# omega_ratio = " << g17(ratio) << '\n';
            f << "# ratio_deviation_from_minus_1 = " << g17(std::abs(ratio + 1.0)) << '\n';
        }

        if (setup.write_eigenfunctions) {
            std::filesystem::path p(setup.out);
            const std::string ext = p.extension().string();
            p.replace_extension();
            p += "-eigenfunctions";
            p += ext.empty() ? ".csv" : ext;
            std::ofstream g = open_output(p.string());
            g << "x";
            for (int k = 0; k < ground.n_states(); ++k) g << ",ground_" << k;
            if (excited) {
                for (int k = 0; k < excited->n_states(); ++k) g << ",excited_" << k;
            }
            g << '\n';
            for (size_t i = 0; i < ground.grid.size(); ++i) {
                g << g17(ground.grid[i]);
                for (int k = 0; k < ground.n_states(); ++k) {
                    g << ',' << g17(ground.eigenfunctions[k][i]);
                }
                if (excited) {
                    for (int k = 0; k < excited->n_states(); ++k) {
                        g << ',' << g17(excited->eigenfunctions[k][i]);
                    }
                }
                g << '\n';
            }
            if (!opts.quiet) out << "wrote " << p.string() << '\n';
        }

        if (!opts.quiet) {
            out << "ground well (" << potential_kind_name(setup.ground.potential.kind)
                << "): " << ground.n_states() << " states\n";
            for (int k = 0; k < ground.n_states(); ++k) {
                out << "  E" << k << " = " << g17(ground.eigenvalues[k]) << "  ["
                    << parity_name(ground.parity_flags[k]) << "]\n";
            }
            out << "  delta = E1 - E0 = " << g17(ground.delta) << '\n';
            if (excited) {
                out << "excited well ("
                    << potential_kind_name(setup.excited->potential.kind) << "): "
                    << excited->n_states() << " states\n";
                for (int k = 0; k < excited->n_states(); ++k) {
                    out << "  E" << k << " = " << g17(excited->eigenvalues[k]) << "  ["
                        << parity_name(excited->parity_flags[k]) << "]\n";
                }
            }
            if (rabi) {
                const double ratio = rabi->omega2 / rabi->omega1;
                out << "rabi overlaps: omega1 = " << g17(rabi->omega1)
                    << ", omega2 = " << g17(rabi->omega2) << '\n';
                out << "omega2/omega1 = " << g17(ratio)
                    << " (deviation from -1: " << g17(std::abs(ratio + 1.0)) << ")\n";
            }
            out << "wrote " << setup.out << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SimError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int cmd_scenarios(const CommandOptions& opts, std::ostream& out, std::ostream&) {
    (void)opts;
    for (const Scenario& s : builtin_scenarios()) {
        out << s.name << "\n    " << s.description << "\n   ";
        for (const auto& [key, value] : s.defaults) {
            out << ' ' << key.substr(key.find('.') + 1) << '=' << value;
        }
        out << '\n';
    }
    return kExitOk;
}

}  // namespace darkwell::cli
