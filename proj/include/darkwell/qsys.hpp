// qsys.hpp - three-level Lambda-system parameters, rotating-frame amplitudes
// and the rotating-frame Hamiltonian.
//
// Conventions (hbar = 1, one arbitrary angular-frequency unit throughout):
//   |1>, |2> are the double-well doublet states, |3> the laser-coupled upper
//   state.  The stored amplitudes b_i are the rotating-frame ones; the bare
//   amplitudes differ only by the global phases a_1 = b_1 e^{-i(w3-w)t},
//   a_2 = b_2 e^{-i(w3-w)t}, a_3 = b_3 e^{-i w3 t}, so every |b_i|^2 equals
//   the corresponding bare population and the left/right probabilities below
//   are phase-convention independent.
#pragma once

#include <cmath>

#include "darkwell/complex3.hpp"
#include "darkwell/errors.hpp"

namespace darkwell {

// The five physical parameters of the model.
struct SystemParams {
    double omega1_rabi = 0.0;  // Rabi coupling of |1> <-> |3>
    double omega2_rabi = 0.0;  // Rabi coupling of |2> <-> |3>
    double delta1 = 0.0;       // detuning of the |1> <-> |3> transition
    double delta2 = 0.0;       // detuning of the |2> <-> |3> transition
    double gamma = 0.0;        // upper-state decay rate, >= 0

    double rabi_norm() const { return std::hypot(omega1_rabi, omega2_rabi); }
    double splitting() const { return delta2 - delta1; }  // doublet splitting delta
    double max_frequency() const;

    void validate() const;  // throws BadArgument on gamma < 0 or non-finite fields
};

// Rotating-frame probability amplitudes at time t.
struct Amplitudes {
    cplx b1{};
    cplx b2{};
    cplx b3{};
    double t = 0.0;

    double norm2() const { return std::norm(b1) + std::norm(b2) + std::norm(b3); }
    Vec3 vec() const { return {b1, b2, b3}; }
    static Amplitudes from_vec(const Vec3& v, double t) { return {v[0], v[1], v[2], t}; }
};

enum class InitKind { left, right, dark, bright, bare };

// H = [[d1, 0, W1], [0, d2, W2], [W1, W2, -i g/2]]; Hermitian iff gamma = 0.
Mat3 build_hamiltonian(const SystemParams& p);

// Wavepacket localized in the left / right well: c1 = -c2 = 1/sqrt(2) resp.
// c1 = c2 = 1/sqrt(2).
Amplitudes left_state();
Amplitudes right_state();

// Dark |-> = (W2|1> - W1|2>)/W and bright |+> = (W1|1> + W2|2>)/W states;
// ZeroCoupling when W = 0.
Amplitudes dark_state(const SystemParams& p);
Amplitudes bright_state(const SystemParams& p);

// Arbitrary superposition; NotNormalized unless |c1|^2+|c2|^2+|c3|^2 = 1
// within 1e-12.
Amplitudes bare_state(cplx c1, cplx c2, cplx c3);

// Dispatcher used by config-driven callers; InitKind::bare is not
// dispatchable here (it carries coefficients), use bare_state.
Amplitudes initial_state(InitKind kind, const SystemParams& p);

struct Localization {
    double p_left = 0.0;
    double p_right = 0.0;
    double p3 = 0.0;
};

// P_L = |b1 - b2|^2 / 2, P_R = |b1 + b2|^2 / 2, P3 = |b3|^2.
Localization localization_probabilities(const Amplitudes& s);

}  // namespace darkwell
