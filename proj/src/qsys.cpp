#include "darkwell/qsys.hpp"

#include <algorithm>
#include <sstream>

namespace darkwell {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752;
constexpr double kNormTol = 1e-12;
}  // namespace

double SystemParams::max_frequency() const {
    return std::max({rabi_norm(), std::abs(delta1), std::abs(delta2), gamma});
}

void SystemParams::validate() const {
    if (!std::isfinite(omega1_rabi) || !std::isfinite(omega2_rabi) ||
        !std::isfinite(delta1) || !std::isfinite(delta2) || !std::isfinite(gamma)) {
        fail(Errc::bad_argument, "SystemParams has a non-finite field");
    }
    if (gamma < 0.0) fail(Errc::bad_argument, "gamma must be >= 0");
}

Mat3 build_hamiltonian(const SystemParams& p) {
    p.validate();
    Mat3 h;
    h(0, 0) = p.delta1;
    h(0, 2) = p.omega1_rabi;
    h(1, 1) = p.delta2;
    h(1, 2) = p.omega2_rabi;
    h(2, 0) = p.omega1_rabi;
    h(2, 1) = p.omega2_rabi;
    h(2, 2) = cplx(0.0, -0.5 * p.gamma);
    return h;
}

Amplitudes left_state() { return {kInvSqrt2, -kInvSqrt2, 0.0, 0.0}; }

Amplitudes right_state() { return {kInvSqrt2, kInvSqrt2, 0.0, 0.0}; }

Amplitudes dark_state(const SystemParams& p) {
    p.validate();
    const double w = p.rabi_norm();
    if (w == 0.0) fail(Errc::zero_coupling, "dark state undefined for Omega = 0");
    return {p.omega2_rabi / w, -p.omega1_rabi / w, 0.0, 0.0};
}

Amplitudes bright_state(const SystemParams& p) {
    p.validate();
    const double w = p.rabi_norm();
    if (w == 0.0) fail(Errc::zero_coupling, "bright state undefined for Omega = 0");
    return {p.omega1_rabi / w, p.omega2_rabi / w, 0.0, 0.0};
}

Amplitudes bare_state(cplx c1, cplx c2, cplx c3) {
    const double n2 = std::norm(c1) + std::norm(c2) + std::norm(c3);
    if (std::abs(n2 - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "bare state norm^2 = " << n2 << " is not 1 within 1e-12";
        fail(Errc::not_normalized, os.str());
    }
    return {c1, c2, c3, 0.0};
}

Amplitudes initial_state(InitKind kind, const SystemParams& p) {
    switch (kind) {
        case InitKind::left: return left_state();
        case InitKind::right: return right_state();
        case InitKind::dark: return dark_state(p);
        case InitKind::bright: return bright_state(p);
        case InitKind::bare: break;
    }
    fail(Errc::bad_argument, "bare initial state needs coefficients; use bare_state");
}

Localization localization_probabilities(const Amplitudes& s) {
    return {0.5 * std::norm(s.b1 - s.b2), 0.5 * std::norm(s.b1 + s.b2), std::norm(s.b3)};
}

}  // namespace darkwell
