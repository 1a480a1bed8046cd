// dynamics.hpp - time integration of i db/dt = H b and the exact
// matrix-exponential propagator used to cross-check it.
#pragma once

#include <vector>

#include "darkwell/qsys.hpp"

namespace darkwell {

struct TrajectorySample {
    Amplitudes state;  // state.t is the sample time
    Localization loc;
    double norm2 = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    SystemParams params;
    double dt_effective = 0.0;
    bool settled = false;  // set by integrate_until_settled

    const TrajectorySample& first() const { return samples.front(); }
    const TrajectorySample& last() const { return samples.back(); }

    // max |norm^2 - norm^2(0)| over the samples; for gamma = 0 this is the
    // integrator's unitarity drift and should stay within the caller's
    // tolerance (1e-9 is the documented budget).
    double max_norm_drift() const;
};

// Step the integrator accepts: dt * max_frequency <= 0.1 (StepTooLarge above).
inline constexpr double kStepGuard = 0.1;

// Default step keeps the RK4 norm drift below 1e-9 over 1e6 steps
// (per-step deficit ~ (w dt)^6 / 72 for eigenfrequency w).
inline constexpr double kDefaultStepFactor = 0.004;

// Horizon-aware default step; for a zero Hamiltonian falls back to
// horizon/100.
double default_dt(const SystemParams& p, double horizon);

// 50/gamma + 50/Omega: several decay times plus Rabi periods.
double default_t_max(const SystemParams& p);

// Classical fixed-step RK4.  The requested dt is shrunk uniformly so an
// integer number of steps lands exactly on t_end; the accepted value is
// recorded in Trajectory::dt_effective.  Samples are stored every
// sample_every steps plus the final point; the first sample is the supplied
// initial state verbatim.  Requires a unit-norm initial state (NotNormalized
// otherwise); NormBlowup if norm^2 ever exceeds its initial value by more
// than 1e-6.
Trajectory integrate(const SystemParams& p, const Amplitudes& init, double t_end,
                     double dt, long sample_every = 1);

// Same integrator without the unit-norm requirement (the blow-up guard
// scales with the initial norm).  Linear in init.
Trajectory integrate_any(const SystemParams& p, const Amplitudes& init, double t_end,
                         double dt, long sample_every = 1);

// exp(-i H t): the exact flow of the linear system, via expm below.
Mat3 propagator(const SystemParams& p, double t);

// Scaling-and-squaring matrix exponential with a Taylor kernel; accurate to
// machine precision for any finite 3x3 argument.
Mat3 expm(const Mat3& a);

// Integrate until the bright-sector population |b_+|^2 + |b_3|^2 drops below
// eps: the operational t -> infinity limit when the upper state decays.
// Errors: GammaZero when gamma = 0, ZeroCoupling when Omega = 0 (the bright
// sector is undefined), NotSettled when t_max is reached first.
// dt = 0 selects default_dt.  Note the localization error of the returned
// final sample scales like sqrt(eps) (dark-bright cross term), not eps.
Trajectory integrate_until_settled(const SystemParams& p, const Amplitudes& init,
                                   double eps, double t_max, double dt = 0.0);

}  // namespace darkwell
