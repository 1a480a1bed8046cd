#include "darkwell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "darkwell/darkbright.hpp"

namespace darkwell {

namespace {

constexpr double kNormGuardSlack = 1e-6;
constexpr double kInitNormTol = 1e-9;

inline Vec3 schrodinger_rhs(const Mat3& h, const Vec3& b) {
    // i db/dt = H b  =>  db/dt = -i H b
    const Vec3 hb = h * b;
    const cplx mi(0.0, -1.0);
    return {mi * hb[0], mi * hb[1], mi * hb[2]};
}

inline void rk4_step(const Mat3& h, Vec3& b, double dt) {
    const Vec3 k1 = schrodinger_rhs(h, b);
    const Vec3 k2 = schrodinger_rhs(h, b + (0.5 * dt) * k1);
    const Vec3 k3 = schrodinger_rhs(h, b + (0.5 * dt) * k2);
    const Vec3 k4 = schrodinger_rhs(h, b + dt * k3);
    b = b + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

TrajectorySample make_sample(const Vec3& b, double t) {
    Amplitudes s = Amplitudes::from_vec(b, t);
    return {s, localization_probabilities(s), s.norm2()};
}

void check_step(const SystemParams& p, double t_end, double dt) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        fail(Errc::bad_argument, "t_end must be positive and finite");
    }
    if (!(dt > 0.0) || dt > t_end * (1.0 + 1e-12)) {
        fail(Errc::bad_argument, "dt must lie in (0, t_end]");
    }
    const double product = dt * p.max_frequency();
    if (product > kStepGuard * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "dt * max(Omega,|delta1|,|delta2|,gamma) = " << product << " exceeds "
           << kStepGuard;
        fail(Errc::step_too_large, os.str());
    }
}

Trajectory integrate_impl(const SystemParams& p, const Amplitudes& init, double t_end,
                          double dt, long sample_every, bool require_unit_norm) {
    p.validate();
    check_step(p, t_end, dt);
    if (sample_every < 1) fail(Errc::bad_argument, "sample_every must be >= 1");

    const double init_n2 = init.norm2();
    if (require_unit_norm && std::abs(init_n2 - 1.0) > kInitNormTol) {
        std::ostringstream os;
        os << "initial norm^2 = " << init_n2 << " is not 1 within 1e-9";
        fail(Errc::not_normalized, os.str());
    }

    const long n_steps = std::max<long>(1, static_cast<long>(std::ceil(t_end / dt - 1e-12)));
    const double dt_eff = t_end / static_cast<double>(n_steps);
    const double guard = init_n2 * (1.0 + kNormGuardSlack);

    const Mat3 h = build_hamiltonian(p);

    Trajectory traj;
    traj.params = p;
    traj.dt_effective = dt_eff;
    traj.samples.reserve(static_cast<size_t>(n_steps / sample_every) + 2);
    traj.samples.push_back({init, localization_probabilities(init), init_n2});

    Vec3 b = init.vec();
    for (long step = 1; step <= n_steps; ++step) {
        rk4_step(h, b, dt_eff);
        const double n2 = norm2(b);
        if (n2 > guard) {
            std::ostringstream os;
            os << "norm^2 = " << n2 << " at t = " << init.t + step * dt_eff
               << " exceeds the initial value by more than 1e-6";
            fail(Errc::norm_blowup, os.str());
        }
        if (step % sample_every == 0 || step == n_steps) {
            traj.samples.push_back(make_sample(b, init.t + step * dt_eff));
        }
    }
    return traj;
}

}  // namespace

double Trajectory::max_norm_drift() const {
    if (samples.empty()) return 0.0;
    const double base = samples.front().norm2;
    double worst = 0.0;
    for (const TrajectorySample& s : samples) {
        worst = std::max(worst, std::abs(s.norm2 - base));
    }
    return worst;
}

double default_dt(const SystemParams& p, double horizon) {
    const double f = p.max_frequency();
    double dt = f > 0.0 ? kDefaultStepFactor / f : horizon / 100.0;
    return std::min(dt, horizon);
}

double default_t_max(const SystemParams& p) {
    return 50.0 / p.gamma + 50.0 / p.rabi_norm();
}

Trajectory integrate(const SystemParams& p, const Amplitudes& init, double t_end,
                     double dt, long sample_every) {
    return integrate_impl(p, init, t_end, dt, sample_every, true);
}

Trajectory integrate_any(const SystemParams& p, const Amplitudes& init, double t_end,
                         double dt, long sample_every) {
    return integrate_impl(p, init, t_end, dt, sample_every, false);
}

Mat3 expm(const Mat3& a) {
    // Scale so the 1-norm is at most 1/4, sum the Taylor series by Horner
    // (16 terms leave a remainder below 1e-24), square back up.
    const double nrm = one_norm(a);
    int squarings = 0;
    if (nrm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.25)));
    const double scale = std::ldexp(1.0, -squarings);

    Mat3 b = scale * a;
    Mat3 e = Mat3::identity();
    for (int k = 16; k >= 1; --k) e = Mat3::identity() + (1.0 / k) * (b * e);
    for (int i = 0; i < squarings; ++i) e = e * e;
    return e;
}

Mat3 propagator(const SystemParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) fail(Errc::bad_argument, "propagator time must be finite");
    return expm(cplx(0.0, -t) * build_hamiltonian(p));
}

Trajectory integrate_until_settled(const SystemParams& p, const Amplitudes& init,
                                   double eps, double t_max, double dt) {
    p.validate();
    if (p.gamma <= 0.0) {
        fail(Errc::gamma_zero, "settling requires gamma > 0 (nothing decays otherwise)");
    }
    const double w = p.rabi_norm();
    if (w == 0.0) fail(Errc::zero_coupling, "bright sector undefined for Omega = 0");
    if (!(eps > 0.0) || !(eps < 1.0)) fail(Errc::bad_argument, "eps must lie in (0, 1)");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        fail(Errc::bad_argument, "t_max must be positive and finite");
    }

    if (dt <= 0.0) dt = default_dt(p, t_max);
    check_step(p, t_max, dt);

    const double init_n2 = init.norm2();
    if (std::abs(init_n2 - 1.0) > kInitNormTol) {
        fail(Errc::not_normalized, "settling expects a unit-norm initial state");
    }

    const double c1 = p.omega1_rabi / w;
    const double c2 = p.omega2_rabi / w;
    const auto bright_pop = [&](const Vec3& b) {
        return std::norm(c1 * b[0] + c2 * b[1]) + std::norm(b[2]);
    };

    const long n_max = static_cast<long>(std::ceil(t_max / dt));
    const long sample_every = std::max<long>(1, n_max / 4096);
    const double guard = init_n2 * (1.0 + kNormGuardSlack);
    const Mat3 h = build_hamiltonian(p);

    Trajectory traj;
    traj.params = p;
    traj.dt_effective = dt;
    traj.samples.push_back({init, localization_probabilities(init), init_n2});

    Vec3 b = init.vec();
    if (bright_pop(b) < eps) {
        traj.settled = true;  // e.g. a dark-state init: nothing left to drain
        return traj;
    }

    for (long step = 1; step <= n_max; ++step) {
        rk4_step(h, b, dt);
        const double n2 = norm2(b);
        if (n2 > guard) fail(Errc::norm_blowup, "norm^2 grew during settling");
        const double t = init.t + step * dt;
        const bool drained = bright_pop(b) < eps;
        if (drained || step % sample_every == 0) {
            traj.samples.push_back(make_sample(b, t));
        }
        if (drained) {
            traj.settled = true;
            return traj;
        }
    }

    std::ostringstream os;
    os << "bright-sector population still >= " << eps << " at t_max = " << t_max;
    fail(Errc::not_settled, os.str());
}

}  // namespace darkwell
