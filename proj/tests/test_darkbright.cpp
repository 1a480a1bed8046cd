#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "darkwell/darkbright.hpp"
#include "darkwell/dynamics.hpp"
#include "doctest.h"

using namespace darkwell;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen(99);
    return gen;
}

SystemParams random_coupled_params() {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    SystemParams p;
    do {
        p.omega1_rabi = uni(rng());
        p.omega2_rabi = uni(rng());
    } while (p.rabi_norm() < 0.1);
    p.delta1 = uni(rng());
    p.delta2 = uni(rng());
    p.gamma = std::abs(uni(rng()));
    return p;
}

DarkBrightAmplitudes random_db_state() {
    std::normal_distribution<double> gauss;
    return {cplx(gauss(rng()), gauss(rng())), cplx(gauss(rng()), gauss(rng())),
            cplx(gauss(rng()), gauss(rng())), 0.0};
}

}  // namespace

TEST_CASE("basis change: aligned and anti-aligned states") {
    SystemParams p{1.0, 1.0, 0.0, 0.0, 0.0};
    const Amplitudes plus = right_state();  // (1,1)/sqrt(2) is |+> when W1 = W2
    DarkBrightAmplitudes db = to_dark_bright(plus, p);
    CHECK(db.b_plus.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(db.b_minus) < 1e-15);

    // W2 = -W1: (1,1)/sqrt(2) is anti-aligned with |->, so b_minus = -1
    SystemParams q{1.0, -1.0, 0.0, 0.0, 0.0};
    db = to_dark_bright(right_state(), q);
    CHECK(std::abs(db.b_plus) < 1e-15);
    CHECK(db.b_minus.real() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("from_dark_bright inverts to_dark_bright and fixes b3") {
    SystemParams p{1.0, 1.0, 0.0, 0.0, 0.0};
    const Amplitudes a = from_dark_bright({1.0, 0.0, 0.0, 0.0}, p);
    CHECK(a.b1.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(a.b2.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    const Amplitudes b = from_dark_bright({0.0, 1.0, 0.0, 0.0}, p);
    CHECK(b.b1.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.b2.real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));

    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams pr = random_coupled_params();
        const Amplitudes s{cplx(gauss(rng()), gauss(rng())),
                           cplx(gauss(rng()), gauss(rng())),
                           cplx(gauss(rng()), gauss(rng())), 1.5};
        const Amplitudes back = from_dark_bright(to_dark_bright(s, pr), pr);
        CHECK(std::abs(back.b1 - s.b1) < 1e-14);
        CHECK(std::abs(back.b2 - s.b2) < 1e-14);
        CHECK(back.b3 == s.b3);
        CHECK(back.t == s.t);
    }
}

TEST_CASE("basis change preserves the lower-doublet and total norms") {
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = random_coupled_params();
        std::normal_distribution<double> gauss;
        const Amplitudes s{cplx(gauss(rng()), gauss(rng())),
                           cplx(gauss(rng()), gauss(rng())),
                           cplx(gauss(rng()), gauss(rng())), 0.0};
        const DarkBrightAmplitudes db = to_dark_bright(s, p);
        const double lower_bare = std::norm(s.b1) + std::norm(s.b2);
        const double lower_db = std::norm(db.b_plus) + std::norm(db.b_minus);
        CHECK(lower_db == doctest::Approx(lower_bare).epsilon(1e-14));
        CHECK(db.norm2() == doctest::Approx(s.norm2()).epsilon(1e-14));
    }
}

TEST_CASE("transformed equations: decoupling and pure Rabi structure") {
    // d1 = d2 = d0: the dark amplitude only rotates, nothing couples to it
    SystemParams p{0.8, -1.7, 0.4, 0.4, 0.3};
    const DarkBrightAmplitudes s{0.0, cplx(0.6, -0.2), 0.0, 0.0};
    const DarkBrightAmplitudes d = dark_bright_rhs(s, p);
    CHECK(std::abs(d.b_plus) < 1e-15);
    CHECK(std::abs(d.b3) < 1e-15);
    CHECK(std::abs(d.b_minus - cplx(0.0, -1.0) * 0.4 * s.b_minus) < 1e-15);

    // only Omega nonzero: db+/dt = -i W b3, db3/dt = -i W b+
    SystemParams q{3.0, 4.0, 0.0, 0.0, 0.0};  // W = 5
    const DarkBrightAmplitudes u{cplx(0.2, 0.1), 0.0, cplx(-0.4, 0.5), 0.0};
    const DarkBrightAmplitudes du = dark_bright_rhs(u, q);
    CHECK(std::abs(du.b_plus - cplx(0.0, -5.0) * u.b3) < 1e-14);
    CHECK(std::abs(du.b3 - cplx(0.0, -5.0) * u.b_plus) < 1e-14);
    CHECK(std::abs(du.b_minus) < 1e-15);
}

TEST_CASE("transformed equations agree with the conjugated Hamiltonian") {
    // relation under test: d/dt (M b) = M (-i H) M^-1 (M b), M its own inverse
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = random_coupled_params();
        const DarkBrightAmplitudes s = random_db_state();
        const DarkBrightAmplitudes d = dark_bright_rhs(s, p);

        const Mat3 m = mixing_matrix(p);
        const Mat3 h = build_hamiltonian(p);
        const Vec3 oracle = cplx(0.0, -1.0) * (m * (h * (m * Vec3{s.b_plus, s.b_minus, s.b3})));
        worst = std::max(worst, dist_inf({d.b_plus, d.b_minus, d.b3}, oracle));
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("dark state condition error") {
    CHECK(dark_state_condition_error({1.0, 2.0, 0.7, 0.7, 0.0}) == 0.0);
    CHECK(dark_state_condition_error({1.0, 0.0, 0.1, 0.9, 0.0}) == 0.0);
    // d1 = 0, d2 = delta, W1 = W2 -> delta/2
    CHECK(dark_state_condition_error({1.0, 1.0, 0.0, 0.3, 0.0}) ==
          doctest::Approx(0.15).epsilon(1e-14));
    CHECK_THROWS_AS(dark_state_condition_error({0.0, 0.0, 0.0, 0.1, 0.0}), SimError);
}

TEST_CASE("on resonance the dark amplitude is pinned at 1 under full dynamics") {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p = random_coupled_params();
        p.delta2 = p.delta1;  // two-photon resonance
        const Amplitudes init = dark_state(p);
        const double t_end = 30.0 / p.max_frequency();
        const Trajectory traj = integrate(p, init, t_end, default_dt(p, t_end), 100);
        for (const auto& s : traj.samples) {
            const DarkBrightAmplitudes db = to_dark_bright(s.state, p);
            CHECK(std::abs(std::abs(db.b_minus) - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("dark-state loss grows quadratically in the condition error") {
    // fixed couplings, three decades of detuning mismatch; the loss after a
    // fixed time must scale as the square of the Eq.-style leak rate
    SystemParams base{1.0, 1.0, 0.0, 0.0, 0.5};
    const double t_end = 20.0;
    std::vector<double> log_rate, log_loss;
    for (double mismatch : {1e-3, 1e-2, 1e-1}) {
        SystemParams p = base;
        p.delta2 = p.delta1 + mismatch;
        const Amplitudes init = dark_state(p);
        const Trajectory traj = integrate(p, init, t_end, default_dt(p, t_end), 1000000);
        const DarkBrightAmplitudes db = to_dark_bright(traj.last().state, p);
        const double loss = 1.0 - std::norm(db.b_minus);
        REQUIRE(loss > 0.0);
        log_rate.push_back(std::log(dark_state_condition_error(p)));
        log_loss.push_back(std::log(loss));
    }
    // least-squares slope over the three decades
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(log_rate.size());
    for (size_t i = 0; i < log_rate.size(); ++i) {
        sx += log_rate[i];
        sy += log_loss[i];
        sxx += log_rate[i] * log_rate[i];
        sxy += log_rate[i] * log_loss[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("zero coupling rejected everywhere in the basis module") {
    const SystemParams p;
    const Amplitudes s = left_state();
    CHECK_THROWS_AS(to_dark_bright(s, p), SimError);
    CHECK_THROWS_AS(from_dark_bright({1.0, 0.0, 0.0, 0.0}, p), SimError);
    CHECK_THROWS_AS(dark_bright_rhs({1.0, 0.0, 0.0, 0.0}, p), SimError);
    CHECK_THROWS_AS(mixing_matrix(p), SimError);
}
