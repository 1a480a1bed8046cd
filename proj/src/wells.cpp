#include "darkwell/wells.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace darkwell {

namespace {

constexpr double kConfinedFraction = 1e-6;
constexpr double kDoubletFloor = 1e-12;
constexpr double kParityResidual = 1e-6;

// ---- symmetric tridiagonal eigensolver (constant off-diagonal) ----
//
// The discretized Hamiltonian is T = diag(d) + e on both off-diagonals.
// Eigenvalues by Sturm-count bisection, eigenvectors by shifted inverse
// iteration with partial pivoting, then a full modified Gram-Schmidt pass
// so near-degenerate doublets come out orthogonal.

int sturm_count_below(const std::vector<double>& d, double e, double x) {
    const double e2 = e * e;
    const double pivmin = std::numeric_limits<double>::min() /
                          std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (size_t i = 1; i < d.size(); ++i) {
        double denom = q;
        if (std::abs(denom) < pivmin) denom = denom < 0.0 ? -pivmin : pivmin;
        q = d[i] - x - e2 / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

double bisect_eigenvalue(const std::vector<double>& d, double e, int k, double lo,
                         double hi) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval exhausted in double precision
        if (sturm_count_below(d, e, mid) >= k + 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Solve (T - lambda I) x = b in place, tridiagonal Gaussian elimination with
// partial pivoting (fill-in on a second superdiagonal).
void shifted_tridiag_solve(const std::vector<double>& d, double e, double lambda,
                           std::vector<double>& x) {
    const size_t n = d.size();
    std::vector<double> dd(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
    for (size_t i = 0; i < n; ++i) dd[i] = d[i] - lambda;
    for (size_t i = 0; i + 1 < n; ++i) {
        du[i] = e;
        dl[i] = e;
    }
    const double pivfloor = std::numeric_limits<double>::min() * 4.0;

    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i])) {
            double piv = dd[i];
            if (std::abs(piv) < pivfloor) piv = piv < 0.0 ? -pivfloor : pivfloor;
            const double m = dl[i] / piv;
            dd[i + 1] -= m * du[i];  // du2 stays zero without a swap
            x[i + 1] -= m * x[i];
            dd[i] = piv;
        } else {
            // swap rows i and i+1
            const double m = dd[i] / dl[i];
            std::swap(dd[i], dl[i]);
            const double tmp_du = du[i];
            du[i] = dd[i + 1];
            dd[i + 1] = tmp_du - m * dd[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du[i + 1];
            }
            std::swap(x[i], x[i + 1]);
            x[i + 1] -= m * x[i];
        }
    }

    // back substitution
    for (size_t ii = n; ii-- > 0;) {
        double v = x[ii];
        if (ii + 1 < n) v -= du[ii] * x[ii + 1];
        if (ii + 2 < n) v -= du2[ii] * x[ii + 2];
        double piv = dd[ii];
        if (std::abs(piv) < pivfloor) piv = piv < 0.0 ? -pivfloor : pivfloor;
        x[ii] = v / piv;
    }
}

double euclid_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void scale_vec(std::vector<double>& v, double s) {
    for (double& x : v) x *= s;
}

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> inverse_iteration(const std::vector<double>& d, double e,
                                      double lambda, unsigned seed,
                                      const std::vector<const std::vector<double>*>& cluster) {
    const size_t n = d.size();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = uni(rng);
    scale_vec(x, 1.0 / euclid_norm(x));

    for (int iter = 0; iter < 6; ++iter) {
        shifted_tridiag_solve(d, e, lambda, x);
        for (const auto* prev : cluster) {
            const double proj = dot_vec(x, *prev);
            for (size_t i = 0; i < n; ++i) x[i] -= proj * (*prev)[i];
        }
        const double nrm = euclid_norm(x);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            // degenerate start vector; reseed and keep going
            for (double& v : x) v = uni(rng);
            scale_vec(x, 1.0 / euclid_norm(x));
            continue;
        }
        scale_vec(x, 1.0 / nrm);
        if (iter >= 1) {
            // residual ||T x - lambda x||
            double res = 0.0;
            for (size_t i = 0; i < n; ++i) {
                double tx = d[i] * x[i];
                if (i > 0) tx += e * x[i - 1];
                if (i + 1 < n) tx += e * x[i + 1];
                const double r = tx - lambda * x[i];
                res += r * r;
            }
            if (std::sqrt(res) < 1e-10 * (std::abs(lambda) + std::abs(e))) break;
        }
    }
    return x;
}

Parity classify_parity(const std::vector<double>& psi, double dx, bool mirror_grid) {
    if (!mirror_grid) return Parity::none;
    const size_t n = psi.size();
    double r_sym = 0.0, r_anti = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double m = psi[n - 1 - i];
        r_sym += (psi[i] - m) * (psi[i] - m) * dx;
        r_anti += (psi[i] + m) * (psi[i] + m) * dx;
    }
    if (r_sym < kParityResidual) return Parity::symmetric;
    if (r_anti < kParityResidual) return Parity::antisymmetric;
    return Parity::none;
}

// positive sign at the first non-negligible value scanning from the right
void fix_sign_from_right(std::vector<double>& psi) {
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;
    for (size_t i = psi.size(); i-- > 0;) {
        if (std::abs(psi[i]) > 1e-8 * peak) {
            if (psi[i] < 0.0) scale_vec(psi, -1.0);
            return;
        }
    }
}

}  // namespace

const char* potential_kind_name(PotentialKind k) {
    switch (k) {
        case PotentialKind::flat: return "flat";
        case PotentialKind::harmonic: return "harmonic";
        case PotentialKind::quartic_double_well: return "quartic_double_well";
        case PotentialKind::biased_quartic: return "biased_quartic";
        case PotentialKind::square_double_well: return "square_double_well";
        case PotentialKind::custom: return "custom";
    }
    return "unknown";
}

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::symmetric: return "symmetric";
        case Parity::antisymmetric: return "antisymmetric";
        case Parity::none: return "none";
    }
    return "unknown";
}

void Potential::validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        fail(Errc::bad_potential, "domain must satisfy x_min < x_max");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        fail(Errc::bad_potential, "mass must be positive");
    }
    if (!v) fail(Errc::bad_potential, "potential has no sampler");
}

Potential Potential::flat(double x_min, double x_max, double mass) {
    return {PotentialKind::flat, x_min, x_max, mass, true,
            [](double) { return 0.0; }, "flat"};
}

Potential Potential::harmonic(double omega, double x_min, double x_max, double mass) {
    return {PotentialKind::harmonic, x_min, x_max, mass, false,
            [omega, mass](double x) { return 0.5 * mass * omega * omega * x * x; },
            "harmonic"};
}

Potential Potential::quartic_double_well(double a, double b, double x_min, double x_max,
                                         double mass) {
    return {PotentialKind::quartic_double_well, x_min, x_max, mass, false,
            [a, b](double x) {
                const double u = x * x - b * b;
                return a * u * u;
            },
            "quartic_double_well"};
}

Potential Potential::biased_quartic(double a, double b, double tilt, double x_min,
                                    double x_max, double mass) {
    return {PotentialKind::biased_quartic, x_min, x_max, mass, false,
            [a, b, tilt](double x) {
                const double u = x * x - b * b;
                return a * u * u + tilt * x;
            },
            "biased_quartic"};
}

Potential Potential::square_double_well(double depth, double width, double barrier_width,
                                        double barrier_height, double bias, double x_min,
                                        double x_max, double mass) {
    return {PotentialKind::square_double_well, x_min, x_max, mass, false,
            [=](double x) {
                const double half_barrier = 0.5 * barrier_width;
                const double ax = std::abs(x);
                if (ax <= half_barrier) return barrier_height - depth;
                if (ax <= half_barrier + width) {
                    return -depth + (x < 0.0 ? -0.5 * bias : 0.5 * bias);
                }
                return 0.0;
            },
            "square_double_well"};
}

Potential Potential::custom_table(std::vector<double> x, std::vector<double> v,
                                  double mass) {
    if (x.size() < 2 || x.size() != v.size()) {
        fail(Errc::bad_potential, "custom table needs at least two (x, V) rows");
    }
    for (size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] < x[i + 1])) {
            fail(Errc::bad_potential, "custom table x column must be strictly increasing");
        }
    }
    for (size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(v[i])) {
            fail(Errc::bad_potential, "custom table has a non-finite entry");
        }
    }
    const double lo = x.front(), hi = x.back();
    auto xs = std::make_shared<std::vector<double>>(std::move(x));
    auto vs = std::make_shared<std::vector<double>>(std::move(v));
    return {PotentialKind::custom, lo, hi, mass, false,
            [xs, vs](double q) {
                const auto& X = *xs;
                const auto& V = *vs;
                if (q <= X.front()) return V.front();
                if (q >= X.back()) return V.back();
                const auto it = std::upper_bound(X.begin(), X.end(), q);
                const size_t j = static_cast<size_t>(it - X.begin());
                const double f = (q - X[j - 1]) / (X[j] - X[j - 1]);
                return V[j - 1] + f * (V[j] - V[j - 1]);
            },
            "custom"};
}

Potential Potential::from_table_file(const std::string& path, double mass) {
    std::ifstream in(path);
    if (!in) fail(Errc::bad_potential, "cannot open potential table '" + path + "'");
    std::vector<double> xs, vs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, v;
        if (!(ls >> x)) continue;  // blank or comment-only line
        if (!(ls >> v)) {
            std::ostringstream os;
            os << "potential table '" << path << "' line " << lineno
               << ": expected two columns";
            fail(Errc::bad_potential, os.str());
        }
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 2) {
        fail(Errc::bad_potential, "potential table '" + path + "' has fewer than two rows");
    }
    return custom_table(std::move(xs), std::move(vs), mass);
}

WellSolution solve_well(const Potential& pot, int n_points, int n_states) {
    pot.validate();
    if (n_points < 200) fail(Errc::bad_argument, "n_points must be >= 200");
    if (n_states < 2) fail(Errc::bad_argument, "n_states must be >= 2");
    if (n_states >= n_points) fail(Errc::bad_argument, "n_states must be < n_points");

    const int n = n_points;
    const double h = (pot.x_max - pot.x_min) / (n + 1);

    WellSolution sol;
    sol.dx = h;
    sol.x_min = pot.x_min;
    sol.x_max = pot.x_max;
    sol.mass = pot.mass;
    sol.grid.resize(n);
    sol.potential.resize(n);
    for (int i = 0; i < n; ++i) {
        sol.grid[i] = pot.x_min + (i + 1) * h;
        sol.potential[i] = pot.v(sol.grid[i]);
        if (!std::isfinite(sol.potential[i])) {
            fail(Errc::bad_potential, "potential sample is not finite");
        }
    }

    // -psi''/(2m) + V psi = E psi  ->  tridiagonal (d, e)
    const double kin = 1.0 / (pot.mass * h * h);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = kin + sol.potential[i];
    const double off = -0.5 * kin;

    double lo = diag[0], hi = diag[0];
    for (double d : diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::abs(off);
    hi += 2.0 * std::abs(off);

    sol.eigenvalues.resize(n_states);
    for (int k = 0; k < n_states; ++k) {
        sol.eigenvalues[k] = bisect_eigenvalue(diag, off, k, lo, hi);
    }

    const double spectral_scale = std::max(std::abs(lo), std::abs(hi));
    const double cluster_tol = std::max(1e-8 * spectral_scale, 1e-11);

    sol.eigenfunctions.resize(n_states);
    for (int k = 0; k < n_states; ++k) {
        std::vector<const std::vector<double>*> cluster;
        for (int j = 0; j < k; ++j) {
            if (std::abs(sol.eigenvalues[k] - sol.eigenvalues[j]) < cluster_tol) {
                cluster.push_back(&sol.eigenfunctions[j]);
            }
        }
        sol.eigenfunctions[k] =
            inverse_iteration(diag, off, sol.eigenvalues[k], 77u + 13u * k, cluster);
    }

    // full modified Gram-Schmidt (two passes) so the whole set is orthonormal
    for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < n_states; ++k) {
            auto& psi = sol.eigenfunctions[k];
            for (int j = 0; j < k; ++j) {
                const double proj = dot_vec(psi, sol.eigenfunctions[j]);
                for (int i = 0; i < n; ++i) psi[i] -= proj * sol.eigenfunctions[j][i];
            }
            scale_vec(psi, 1.0 / euclid_norm(psi));
        }
    }

    const bool mirror_grid =
        std::abs(pot.x_min + pot.x_max) <= 1e-12 * (pot.x_max - pot.x_min);

    // For a symmetric potential, mirroring commutes with the discretized
    // Hamiltonian, so a near-degenerate doublet can be split into its exact
    // parity components; inverse iteration alone mixes them once the
    // splitting approaches the shift accuracy.  The node theorem puts the
    // symmetric state below the antisymmetric one.
    bool mirror_potential = mirror_grid;
    if (mirror_grid) {
        double v_scale = 1.0;
        for (double v : sol.potential) v_scale = std::max(v_scale, std::abs(v));
        for (int i = 0; i < n; ++i) {
            if (std::abs(sol.potential[i] - sol.potential[n - 1 - i]) > 1e-10 * v_scale) {
                mirror_potential = false;
                break;
            }
        }
    }
    if (mirror_potential) {
        for (int k = 0; k + 1 < n_states; ++k) {
            if (sol.eigenvalues[k + 1] - sol.eigenvalues[k] >= cluster_tol) continue;
            auto& lo_vec = sol.eigenfunctions[k];
            auto& hi_vec = sol.eigenfunctions[k + 1];
            std::vector<double> sym(n), anti(n);
            for (int i = 0; i < n; ++i) {
                sym[i] = 0.5 * (lo_vec[i] + lo_vec[n - 1 - i]);
                anti[i] = 0.5 * (lo_vec[i] - lo_vec[n - 1 - i]);
            }
            // take each component from whichever doublet member carries it best
            std::vector<double> sym2(n), anti2(n);
            for (int i = 0; i < n; ++i) {
                sym2[i] = 0.5 * (hi_vec[i] + hi_vec[n - 1 - i]);
                anti2[i] = 0.5 * (hi_vec[i] - hi_vec[n - 1 - i]);
            }
            if (euclid_norm(sym2) > euclid_norm(sym)) sym = std::move(sym2);
            if (euclid_norm(anti2) > euclid_norm(anti)) anti = std::move(anti2);
            const double ns = euclid_norm(sym), na = euclid_norm(anti);
            if (ns > 1e-6 && na > 1e-6) {
                scale_vec(sym, 1.0 / ns);
                scale_vec(anti, 1.0 / na);
                lo_vec = std::move(sym);
                hi_vec = std::move(anti);
            }
            ++k;  // a cluster pair is handled as a unit
        }
    }

    // grid-measure normalization and sign convention
    sol.parity_flags.resize(n_states);
    const int edge = std::max(1, static_cast<int>(std::floor(0.05 * (n + 1))));
    for (int k = 0; k < n_states; ++k) {
        auto& psi = sol.eigenfunctions[k];
        scale_vec(psi, 1.0 / std::sqrt(h));  // Euclidean unit -> sum psi^2 dx = 1
        fix_sign_from_right(psi);
        sol.parity_flags[k] = classify_parity(psi, h, mirror_grid);

        if (!pot.hard_walls) {
            double outer = 0.0;
            for (int i = 0; i < edge; ++i) {
                outer += psi[i] * psi[i] * h;
                outer += psi[n - 1 - i] * psi[n - 1 - i] * h;
            }
            if (outer > kConfinedFraction) {
                std::ostringstream os;
                os << "state " << k << " keeps " << outer
                   << " of its norm in the outer 5% of the domain; enlarge the domain";
                fail(Errc::not_confined, os.str());
            }
        }
    }

    for (int k = 0; k + 1 < n_states; ++k) {
        if (sol.eigenvalues[k + 1] - sol.eigenvalues[k] < kDoubletFloor) {
            std::ostringstream os;
            os << "eigenvalue spacing E" << k + 1 << " - E" << k << " = "
               << sol.eigenvalues[k + 1] - sol.eigenvalues[k]
               << " is below 1e-12; the grid cannot resolve the splitting";
            fail(Errc::degenerate_doublet, os.str());
        }
    }
    sol.delta = sol.eigenvalues[1] - sol.eigenvalues[0];
    return sol;
}

LocalizedPair localized_states(const WellSolution& sol) {
    if (sol.n_states() < 2) {
        fail(Errc::bad_argument, "localized states need at least two solved states");
    }
    if (sol.eigenvalues[1] - sol.eigenvalues[0] < kDoubletFloor) {
        fail(Errc::degenerate_doublet, "doublet spacing below 1e-12");
    }
    const size_t n = sol.grid.size();
    LocalizedPair pair;
    pair.phi_right.resize(n);
    pair.phi_left.resize(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < n; ++i) {
        pair.phi_right[i] = inv_sqrt2 * (sol.eigenfunctions[0][i] + sol.eigenfunctions[1][i]);
        pair.phi_left[i] = inv_sqrt2 * (sol.eigenfunctions[0][i] - sol.eigenfunctions[1][i]);
    }
    for (auto* phi : {&pair.phi_right, &pair.phi_left}) {
        double n2 = 0.0;
        for (double v : *phi) n2 += v * v * sol.dx;
        scale_vec(*phi, 1.0 / std::sqrt(n2));
    }
    return pair;
}

RabiOverlaps rabi_overlaps(const WellSolution& ground, const WellSolution& excited,
                           double mu_E, int excited_index) {
    const size_t n = ground.grid.size();
    const bool same_grid = excited.grid.size() == n &&
                           std::abs(excited.dx - ground.dx) <= 1e-12 * ground.dx &&
                           std::abs(excited.grid.front() - ground.grid.front()) <=
                               1e-9 * ground.dx &&
                           std::abs(excited.grid.back() - ground.grid.back()) <=
                               1e-9 * ground.dx;
    if (!same_grid) {
        fail(Errc::grid_mismatch, "ground and excited solutions use different grids");
    }
    if (ground.n_states() < 2) {
        fail(Errc::bad_argument, "ground solution needs the lowest doublet");
    }
    if (excited_index < 0 || excited_index >= excited.n_states()) {
        fail(Errc::bad_argument, "excited_index out of range");
    }
    const auto& psi3 = excited.eigenfunctions[excited_index];
    RabiOverlaps out;
    out.omega1 = -mu_E * dot_vec(ground.eigenfunctions[0], psi3) * ground.dx;
    out.omega2 = -mu_E * dot_vec(ground.eigenfunctions[1], psi3) * ground.dx;
    return out;
}

double left_side_fraction(const WellSolution& sol, const std::vector<double>& psi) {
    double left = 0.0, total = 0.0;
    for (size_t i = 0; i < sol.grid.size(); ++i) {
        const double w = psi[i] * psi[i] * sol.dx;
        total += w;
        if (sol.grid[i] < 0.0) left += w;
    }
    return total > 0.0 ? left / total : 0.0;
}

}  // namespace darkwell
