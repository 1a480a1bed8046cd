// darkbright.hpp - dark/bright change of basis and the transformed equations
// of motion.
//
// |+> = (W1|1> + W2|2>)/W,  |-> = (W2|1> - W1|2>)/W,  W = sqrt(W1^2 + W2^2).
// The 2x2 mixing is a real orthogonal reflection (its own inverse), so the
// basis change preserves every norm exactly.  Sign convention: b_- is taken
// literally as (W2 b1 - W1 b2)/W; the global sign is unobservable.
#pragma once

#include "darkwell/qsys.hpp"

namespace darkwell {

struct DarkBrightAmplitudes {
    cplx b_plus{};
    cplx b_minus{};
    cplx b3{};
    double t = 0.0;

    double norm2() const { return std::norm(b_plus) + std::norm(b_minus) + std::norm(b3); }
};

// The real orthogonal matrix M with M = M^-1 mapping (b1,b2,b3) to
// (b+,b-,b3).  ZeroCoupling when Omega = 0.
Mat3 mixing_matrix(const SystemParams& p);

DarkBrightAmplitudes to_dark_bright(const Amplitudes& s, const SystemParams& p);
Amplitudes from_dark_bright(const DarkBrightAmplitudes& s, const SystemParams& p);

// Time derivatives (db+/dt, db-/dt, db3/dt) of the transformed amplitude
// equations:
//   i db+/dt = (d1 W1^2 + d2 W2^2)/W^2 b+ + (d1-d2) W1 W2 / W^2 b-  + W b3
//   i db-/dt = (d1-d2) W1 W2 / W^2 b+ + (d1 W2^2 + d2 W1^2)/W^2 b-
//   i db3/dt = -i gamma/2 b3 + W b+
// Returned packaged in a DarkBrightAmplitudes (t copied through).
DarkBrightAmplitudes dark_bright_rhs(const DarkBrightAmplitudes& s, const SystemParams& p);

// |(d1 - d2) W1 W2| / W^2: the off-diagonal coupling through which the dark
// state leaks into the bright state; zero iff d2 = d1 or one coupling
// vanishes.
double dark_state_condition_error(const SystemParams& p);

// |b_+|^2 + |b_3|^2 of a bare-basis state; the quantity drained by decay.
double bright_population(const Amplitudes& s, const SystemParams& p);

}  // namespace darkwell
