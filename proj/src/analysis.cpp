#include "darkwell/analysis.hpp"

#include <cmath>
#include <sstream>

namespace darkwell {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;

double checked_rabi_norm(const SystemParams& p) {
    p.validate();
    const double w = p.rabi_norm();
    if (w == 0.0) fail(Errc::zero_coupling, "asymptotics undefined for Omega = 0");
    return w;
}

// The closed-form asymptotics hold only on the two-photon resonance.
void require_resonant_decay(const SystemParams& p) {
    if (p.gamma <= 0.0) {
        fail(Errc::bad_argument, "asymptotic localization requires gamma > 0");
    }
    const double scale = std::max(1.0, p.max_frequency());
    if (std::abs(p.splitting()) > 1e-12 * scale) {
        std::ostringstream os;
        os << "asymptotic formulas require delta2 = delta1 (got mismatch "
           << p.splitting() << ")";
        fail(Errc::bad_argument, os.str());
    }
}

}  // namespace

TwoLevelInit TwoLevelInit::make(cplx c1, cplx c2) {
    const double n2 = std::norm(c1) + std::norm(c2);
    if (std::abs(n2 - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "two-level init norm^2 = " << n2 << " is not 1 within 1e-12";
        fail(Errc::not_normalized, os.str());
    }
    return {c1, c2};
}

TwoLevelInit TwoLevelInit::left() { return {kInvSqrt2, -kInvSqrt2}; }

TwoLevelInit TwoLevelInit::right() { return {kInvSqrt2, kInvSqrt2}; }

SplitProbability free_tunneling(const TwoLevelInit& init, double delta, double t) {
    const cplx z1 = init.c1 * std::polar(1.0, 0.5 * delta * t);
    const cplx z2 = init.c2 * std::polar(1.0, -0.5 * delta * t);
    return {0.5 * std::norm(z1 - z2), 0.5 * std::norm(z1 + z2)};
}

AsymptoticLocalization asymptotic_right_trapping(const TwoLevelInit& init) {
    const double p_right = 0.5 * (1.0 + 2.0 * std::real(init.c1 * std::conj(init.c2)));
    return {0.0, p_right, p_right};
}

SplitProbability dark_init_localization(const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    const double sum = p.omega1_rabi + p.omega2_rabi;
    const double diff = p.omega1_rabi - p.omega2_rabi;
    return {sum * sum / (2.0 * w * w), diff * diff / (2.0 * w * w)};
}

AsymptoticLocalization general_init_localization(const TwoLevelInit& init,
                                                 const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    require_resonant_decay(p);
    const double w2 = w * w;
    const double overlap = std::norm(p.omega2_rabi * init.c1 - p.omega1_rabi * init.c2);
    const double sum = p.omega1_rabi + p.omega2_rabi;
    const double diff = p.omega1_rabi - p.omega2_rabi;
    return {overlap * sum * sum / (2.0 * w2 * w2), overlap * diff * diff / (2.0 * w2 * w2),
            overlap / w2};
}

AsymptoticLocalization left_init_localization(const SystemParams& p) {
    const double w = checked_rabi_norm(p);
    require_resonant_decay(p);
    const double w4 = w * w * w * w;
    const double sum = p.omega1_rabi + p.omega2_rabi;
    const double sq_diff = p.omega1_rabi * p.omega1_rabi - p.omega2_rabi * p.omega2_rabi;
    const double p_left = sum * sum * sum * sum / (4.0 * w4);
    const double p_right = sq_diff * sq_diff / (4.0 * w4);
    return {p_left, p_right, p_left + p_right};
}

}  // namespace darkwell
