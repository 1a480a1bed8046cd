// analysis.hpp - closed-form predictions: field-free tunneling oscillations
// and the asymptotic localization probabilities.  These double as the
// acceptance oracle for the numerical integrator.
#pragma once

#include "darkwell/qsys.hpp"

namespace darkwell {

// Initial superposition c1|1> + c2|2> of the lower doublet.
struct TwoLevelInit {
    cplx c1{};
    cplx c2{};

    // NotNormalized unless |c1|^2 + |c2|^2 = 1 within 1e-12.
    static TwoLevelInit make(cplx c1, cplx c2);
    static TwoLevelInit left();   // c1 = -c2 = 1/sqrt(2)
    static TwoLevelInit right();  // c1 = c2 = 1/sqrt(2)
};

struct SplitProbability {
    double p_left = 0.0;
    double p_right = 0.0;
};

struct AsymptoticLocalization {
    double p_left_inf = 0.0;
    double p_right_inf = 0.0;
    double survival = 0.0;  // p_left_inf + p_right_inf = |<-|init>|^2
};

// Field-free evolution: c1, c2 pick up phases e^{+i delta t/2}, e^{-i delta t/2}
// (common phase dropped); P_L = |c1' - c2'|^2/2, P_R = |c1' + c2'|^2/2.
// Left init gives (cos^2(delta t/2), sin^2(delta t/2)).
SplitProbability free_tunneling(const TwoLevelInit& init, double delta, double t);

// Omega2 = -Omega1 regime with decay: P_L -> 0 and the trapped fraction
// P_R = (1 + 2 Re(c1 c2*)) / 2 is constant in time.
AsymptoticLocalization asymptotic_right_trapping(const TwoLevelInit& init);

// System prepared in the dark state: time-independent
// P_L = (W1+W2)^2/(2 W^2), P_R = (W1-W2)^2/(2 W^2), no decay.
SplitProbability dark_init_localization(const SystemParams& p);

// Arbitrary lower-doublet init under decay (requires gamma > 0 and
// delta2 = delta1): the dark-state overlap |W2 c1 - W1 c2|^2 sets the
// surviving fraction, distributed left/right as in the dark-init case.
AsymptoticLocalization general_init_localization(const TwoLevelInit& init,
                                                 const SystemParams& p);

// Left-localized init: P_L(inf) = (W1+W2)^4/(4 W^4),
// P_R(inf) = (W1^2-W2^2)^2/(4 W^4); algebraically equal to
// general_init_localization(left).
AsymptoticLocalization left_init_localization(const SystemParams& p);

}  // namespace darkwell
