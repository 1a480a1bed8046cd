#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/scenarios.hpp"
#include "darkwell/dynamics.hpp"

namespace darkwell::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void missing(const std::string& key) {
    throw ConfigError("missing required field '" + key + "'");
}

[[noreturn]] void invalid(const std::string& key, const std::string& value,
                          const std::string& why) {
    throw ConfigError("invalid value for '" + key + "': '" + value + "' (" + why + ")");
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) invalid(key, value, "not a number");
        if (!std::isfinite(v)) invalid(key, value, "not finite");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        invalid(key, value, "not a number");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) invalid(key, value, "not an integer");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        invalid(key, value, "not an integer");
    }
}

InitKind parse_init_kind(const std::string& key, const std::string& value) {
    if (value == "left") return InitKind::left;
    if (value == "right") return InitKind::right;
    if (value == "dark") return InitKind::dark;
    if (value == "bright") return InitKind::bright;
    if (value == "bare") return InitKind::bare;
    invalid(key, value, "expected left|right|dark|bright|bare");
}

SystemParams read_params(const Config& cfg, const std::string& section) {
    SystemParams p;
    p.omega1_rabi = cfg.require_double(section + ".omega1");
    p.omega2_rabi = cfg.require_double(section + ".omega2");
    p.delta1 = cfg.require_double(section + ".delta1");
    p.delta2 = cfg.require_double(section + ".delta2");
    p.gamma = cfg.require_double(section + ".gamma");
    try {
        p.validate();
    } catch (const SimError& e) {
        throw ConfigError(std::string("invalid parameters in [") + section + "]: " +
                          e.what());
    }
    return p;
}

InitSelector read_init(const Config& cfg, const std::string& section) {
    InitSelector sel;
    const std::string key = section + ".init";
    sel.kind = parse_init_kind(key, cfg.require_string(key));
    if (sel.kind == InitKind::bare) {
        sel.c1 = cplx(cfg.get_double(section + ".c1_re", 0.0),
                      cfg.get_double(section + ".c1_im", 0.0));
        sel.c2 = cplx(cfg.get_double(section + ".c2_re", 0.0),
                      cfg.get_double(section + ".c2_im", 0.0));
        sel.c3 = cplx(cfg.get_double(section + ".c3_re", 0.0),
                      cfg.get_double(section + ".c3_im", 0.0));
        try {
            bare_state(sel.c1, sel.c2, sel.c3);
        } catch (const SimError& e) {
            throw ConfigError(std::string("invalid bare initial state in [") + section +
                              "]: " + e.what());
        }
    }
    return sel;
}

void check_step_guard(const std::string& key, double dt, const SystemParams& p) {
    if (dt > 0.0 && dt * p.max_frequency() > kStepGuard * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "'" << key << "' violates the stability guard dt * max frequency <= "
           << kStepGuard;
        throw ConfigError(os.str());
    }
}

}  // namespace

Config Config::from_file(const std::string& path, const std::string& default_section) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    Config cfg;
    std::string line;
    std::string section = default_section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                std::ostringstream os;
                os << path << ":" << lineno << ": malformed section header '" << t << "'";
                throw ConfigError(os.str());
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected 'key = value', got '" << t << "'";
            throw ConfigError(os.str());
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << path << ":" << lineno << ": empty key";
            throw ConfigError(os.str());
        }
        cfg.set(key.find('.') == std::string::npos ? section + "." + key : key, value);
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void Config::apply_override(const std::string& key_value,
                            const std::string& default_section) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override must look like key=value, got '" + key_value + "'");
    }
    std::string key = trim(key_value.substr(0, eq));
    const std::string value = trim(key_value.substr(eq + 1));
    if (key.find('.') == std::string::npos) key = default_section + "." + key;
    set(key, value);
}

void Config::merge_defaults(
    const std::vector<std::pair<std::string, std::string>>& defaults) {
    for (const auto& [key, value] : defaults) values_.try_emplace(key, value);
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::require_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) missing(key);
    return it->second;
}

double Config::require_double(const std::string& key) const {
    return parse_double(key, require_string(key));
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

long Config::get_long(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_long(key, it->second);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    invalid(key, it->second, "expected a boolean");
}

Amplitudes resolve_init(const InitSelector& sel, const SystemParams& p) {
    if (sel.kind == InitKind::bare) return bare_state(sel.c1, sel.c2, sel.c3);
    return initial_state(sel.kind, p);
}

std::optional<TwoLevelInit> resolve_two_level(const InitSelector& sel,
                                              const SystemParams& p) {
    switch (sel.kind) {
        case InitKind::left: return TwoLevelInit::left();
        case InitKind::right: return TwoLevelInit::right();
        case InitKind::dark: {
            const Amplitudes s = dark_state(p);
            return TwoLevelInit{s.b1, s.b2};
        }
        case InitKind::bright: {
            const Amplitudes s = bright_state(p);
            return TwoLevelInit{s.b1, s.b2};
        }
        case InitKind::bare:
            if (std::norm(sel.c3) == 0.0) return TwoLevelInit{sel.c1, sel.c2};
            return std::nullopt;
    }
    return std::nullopt;
}

RunSetup load_run_setup(Config& cfg) {
    RunSetup setup;
    setup.scenario = cfg.get_string("run.scenario", "");
    if (!setup.scenario.empty()) {
        const Scenario* sc = find_scenario(setup.scenario);
        if (!sc) {
            throw ConfigError("unknown scenario '" + setup.scenario +
                              "'; list them with 'darkwell scenarios'");
        }
        cfg.merge_defaults(sc->defaults);
    }

    setup.params = read_params(cfg, "run");
    setup.init = read_init(cfg, "run");
    setup.t_end = cfg.require_double("run.t_end");
    if (!(setup.t_end > 0.0)) throw ConfigError("'run.t_end' must be positive");
    setup.out = cfg.require_string("run.out");

    setup.dt = cfg.get_double("run.dt", 0.0);
    if (setup.dt < 0.0) throw ConfigError("'run.dt' must be >= 0 (0 = automatic)");
    check_step_guard("run.dt", setup.dt, setup.params);
    setup.sample_every = cfg.get_long("run.sample_every", 0);
    if (setup.sample_every < 0) {
        throw ConfigError("'run.sample_every' must be >= 0 (0 = automatic)");
    }
    setup.eps = cfg.get_double("run.eps", 1e-8);
    if (!(setup.eps > 0.0 && setup.eps < 1.0)) {
        throw ConfigError("'run.eps' must lie in (0, 1)");
    }
    setup.t_max = cfg.get_double("run.t_max", 0.0);
    if (setup.t_max < 0.0) throw ConfigError("'run.t_max' must be >= 0 (0 = automatic)");

    // dark/bright init needs a defined basis at load time
    if ((setup.init.kind == InitKind::dark || setup.init.kind == InitKind::bright) &&
        setup.params.rabi_norm() == 0.0) {
        throw ConfigError("'run.init' = dark/bright needs a nonzero Rabi coupling");
    }
    return setup;
}

SweepSetup load_sweep_setup(Config& cfg) {
    SweepSetup setup;

    for (int axis = 1; axis <= 2; ++axis) {
        const std::string suffix = std::to_string(axis);
        if (!cfg.has("sweep.param" + suffix)) {
            if (axis == 1) missing("sweep.param1");
            break;
        }
        SweepAxis ax;
        ax.param = cfg.require_string("sweep.param" + suffix);
        if (ax.param != "omega1" && ax.param != "omega2" && ax.param != "gamma") {
            invalid("sweep.param" + suffix, ax.param, "expected omega1|omega2|gamma");
        }
        ax.start = cfg.require_double("sweep.start" + suffix);
        ax.stop = cfg.require_double("sweep.stop" + suffix);
        ax.count = cfg.get_long("sweep.count" + suffix, 0);
        if (ax.count < 1) {
            throw ConfigError("'sweep.count" + suffix + "' must be a positive integer");
        }
        setup.axes.push_back(ax);
    }
    if (setup.axes.size() == 2 && setup.axes[0].param == setup.axes[1].param) {
        throw ConfigError("sweep axes must name two different parameters");
    }
    long total = 1;
    for (const auto& ax : setup.axes) total *= ax.count;
    if (total > 1000000) {
        throw ConfigError("sweep grid exceeds 1e6 points");
    }

    const auto swept = [&](const std::string& name) {
        return std::any_of(setup.axes.begin(), setup.axes.end(),
                           [&](const SweepAxis& ax) { return ax.param == name; });
    };
    SystemParams& p = setup.base;
    p.omega1_rabi = swept("omega1") ? 0.0 : cfg.require_double("sweep.omega1");
    p.omega2_rabi = swept("omega2") ? 0.0 : cfg.require_double("sweep.omega2");
    p.delta1 = cfg.require_double("sweep.delta1");
    p.delta2 = cfg.require_double("sweep.delta2");
    p.gamma = swept("gamma") ? 1.0 : cfg.require_double("sweep.gamma");
    if (std::abs(p.delta2 - p.delta1) > 1e-12 * std::max(1.0, p.max_frequency())) {
        throw ConfigError(
            "sweep asymptotics require delta2 = delta1 (two-photon resonance)");
    }
    if (swept("gamma")) {
        const auto& ax = *std::find_if(setup.axes.begin(), setup.axes.end(),
                                       [](const SweepAxis& a) { return a.param == "gamma"; });
        if (!(ax.start > 0.0) || !(ax.stop > 0.0)) {
            throw ConfigError("swept gamma range must stay positive");
        }
    } else if (!(p.gamma > 0.0)) {
        throw ConfigError("'sweep.gamma' must be positive (asymptotics need decay)");
    }

    setup.init = read_init(cfg, "sweep");
    if (setup.init.kind == InitKind::bare && std::norm(setup.init.c3) != 0.0) {
        throw ConfigError("sweep initial state must have c3 = 0 (lower doublet only)");
    }
    setup.out = cfg.require_string("sweep.out");

    setup.eps = cfg.get_double("sweep.eps", 1e-10);
    if (!(setup.eps > 0.0 && setup.eps < 1.0)) {
        throw ConfigError("'sweep.eps' must lie in (0, 1)");
    }
    setup.t_max = cfg.get_double("sweep.t_max", 0.0);
    if (setup.t_max < 0.0) throw ConfigError("'sweep.t_max' must be >= 0 (0 = automatic)");
    setup.dt = cfg.get_double("sweep.dt", 0.0);
    if (setup.dt < 0.0) throw ConfigError("'sweep.dt' must be >= 0 (0 = automatic)");
    return setup;
}

namespace {

WellSetup read_well(const Config& cfg, const std::string& section) {
    WellSetup w;
    const std::string kind = cfg.require_string(section + ".kind");
    const double mass = cfg.get_double(section + ".mass", 1.0);
    if (!(mass > 0.0)) throw ConfigError("'" + section + ".mass' must be positive");

    const auto domain = [&](double def_min, double def_max) {
        const double lo = cfg.get_double(section + ".x_min", def_min);
        const double hi = cfg.get_double(section + ".x_max", def_max);
        if (!(lo < hi)) {
            throw ConfigError("'" + section + ".x_min' must be below '" + section +
                              ".x_max'");
        }
        return std::pair{lo, hi};
    };

    try {
        if (kind == "flat") {
            const auto [lo, hi] = domain(0.0, 1.0);
            w.potential = Potential::flat(lo, hi, mass);
        } else if (kind == "harmonic") {
            const double omega = cfg.require_double(section + ".omega");
            const auto [lo, hi] = domain(-10.0, 10.0);
            w.potential = Potential::harmonic(omega, lo, hi, mass);
        } else if (kind == "quartic_double_well") {
            const double a = cfg.require_double(section + ".a");
            const double b = cfg.require_double(section + ".b");
            const auto [lo, hi] = domain(-4.0 * std::abs(b), 4.0 * std::abs(b));
            w.potential = Potential::quartic_double_well(a, b, lo, hi, mass);
        } else if (kind == "biased_quartic") {
            const double a = cfg.require_double(section + ".a");
            const double b = cfg.require_double(section + ".b");
            const double tilt = cfg.require_double(section + ".tilt");
            const auto [lo, hi] = domain(-4.0 * std::abs(b), 4.0 * std::abs(b));
            w.potential = Potential::biased_quartic(a, b, tilt, lo, hi, mass);
        } else if (kind == "square_double_well") {
            const double depth = cfg.require_double(section + ".depth");
            const double width = cfg.require_double(section + ".width");
            const double bw = cfg.require_double(section + ".barrier_width");
            const double bh = cfg.require_double(section + ".barrier_height");
            const double bias = cfg.get_double(section + ".bias", 0.0);
            const double extent = 0.5 * bw + width;
            const auto [lo, hi] = domain(-2.0 * extent, 2.0 * extent);
            w.potential =
                Potential::square_double_well(depth, width, bw, bh, bias, lo, hi, mass);
        } else if (kind == "custom") {
            const std::string path = cfg.require_string(section + ".path");
            w.potential = Potential::from_table_file(path, mass);
        } else {
            invalid(section + ".kind", kind,
                    "expected flat|harmonic|quartic_double_well|biased_quartic|"
                    "square_double_well|custom");
        }
    } catch (const SimError& e) {
        throw ConfigError("invalid potential in [" + section + "]: " + e.what());
    }
    if (cfg.has(section + ".hard_walls")) {
        w.potential.hard_walls = cfg.get_bool(section + ".hard_walls", false);
    }

    w.n_points = static_cast<int>(cfg.get_long(section + ".n_points", 2000));
    w.n_states = static_cast<int>(cfg.get_long(section + ".n_states", 2));
    if (w.n_points < 200) throw ConfigError("'" + section + ".n_points' must be >= 200");
    if (w.n_states < 2) throw ConfigError("'" + section + ".n_states' must be >= 2");
    return w;
}

}  // namespace

WellsSetup load_wells_setup(Config& cfg) {
    WellsSetup setup;
    setup.ground = read_well(cfg, "well.ground");
    if (cfg.has("well.excited.kind")) {
        setup.excited = read_well(cfg, "well.excited");
        const Potential& g = setup.ground.potential;
        const Potential& e = setup.excited->potential;
        if (g.x_min != e.x_min || g.x_max != e.x_max ||
            setup.ground.n_points != setup.excited->n_points) {
            throw ConfigError(
                "excited well must share x_min, x_max and n_points with the ground well "
                "(the overlap integrals need one grid)");
        }
        setup.mu_E = cfg.get_double("well.excited.mu_e", 1.0);
        setup.excited_index =
            static_cast<int>(cfg.get_long("well.excited.excited_index", 0));
        if (setup.excited_index < 0 || setup.excited_index >= setup.excited->n_states) {
            throw ConfigError("'well.excited.excited_index' out of range");
        }
    }
    setup.write_eigenfunctions = cfg.get_bool("report.write_eigenfunctions", false);
    setup.out = cfg.require_string("report.out");
    return setup;
}

}  // namespace darkwell::cli
