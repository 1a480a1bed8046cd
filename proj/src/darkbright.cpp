#include "darkwell/darkbright.hpp"

namespace darkwell {

namespace {
double checked_rabi_norm(const SystemParams& p) {
    p.validate();
    const double w = p.rabi_norm();
    if (w == 0.0) fail(Errc::zero_coupling, "dark/bright basis undefined for Omega = 0");
    return w;
}
}  // namespace

Mat3 mixing_matrix(const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    const double c = p.omega1_rabi / w;
    const double s = p.omega2_rabi / w;
    Mat3 m;
    m(0, 0) = c;
    m(0, 1) = s;
    m(1, 0) = s;
    m(1, 1) = -c;
    m(2, 2) = 1.0;
    return m;
}

DarkBrightAmplitudes to_dark_bright(const Amplitudes& s, const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    const double c1 = p.omega1_rabi / w;
    const double c2 = p.omega2_rabi / w;
    return {c1 * s.b1 + c2 * s.b2, c2 * s.b1 - c1 * s.b2, s.b3, s.t};
}

Amplitudes from_dark_bright(const DarkBrightAmplitudes& s, const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    const double c1 = p.omega1_rabi / w;
    const double c2 = p.omega2_rabi / w;
    // the mixing is its own inverse
    return {c1 * s.b_plus + c2 * s.b_minus, c2 * s.b_plus - c1 * s.b_minus, s.b3, s.t};
}

DarkBrightAmplitudes dark_bright_rhs(const DarkBrightAmplitudes& s, const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    const double w2 = w * w;
    const double e_plus = (p.delta1 * p.omega1_rabi * p.omega1_rabi +
                           p.delta2 * p.omega2_rabi * p.omega2_rabi) / w2;
    const double e_minus = (p.delta1 * p.omega2_rabi * p.omega2_rabi +
                            p.delta2 * p.omega1_rabi * p.omega1_rabi) / w2;
    const double cross = (p.delta1 - p.delta2) * p.omega1_rabi * p.omega2_rabi / w2;

    const cplx mi(0.0, -1.0);
    DarkBrightAmplitudes d;
    d.b_plus = mi * (e_plus * s.b_plus + cross * s.b_minus + w * s.b3);
    d.b_minus = mi * (cross * s.b_plus + e_minus * s.b_minus);
    d.b3 = mi * (w * s.b_plus) - 0.5 * p.gamma * s.b3;
    d.t = s.t;
    return d;
}

double dark_state_condition_error(const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    return std::abs((p.delta1 - p.delta2) * p.omega1_rabi * p.omega2_rabi) / (w * w);
}

double bright_population(const Amplitudes& s, const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    const double c1 = p.omega1_rabi / w;
    const double c2 = p.omega2_rabi / w;
    return std::norm(c1 * s.b1 + c2 * s.b2) + std::norm(s.b3);
}

}  // namespace darkwell
