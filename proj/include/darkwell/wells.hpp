// wells.hpp - 1D stationary Schrodinger solver on a uniform grid for
// double-well potentials: doublet splitting, parity classification,
// left/right localized combinations and Rabi overlap integrals.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "darkwell/errors.hpp"

namespace darkwell {

enum class PotentialKind {
    flat,                // V = 0, hard walls (particle in a box)
    harmonic,            // V = m w^2 x^2 / 2
    quartic_double_well, // V = a (x^2 - b^2)^2
    biased_quartic,      // V = a (x^2 - b^2)^2 + tilt x   (tilt > 0 lowers the left well)
    square_double_well,  // piecewise wells around a central barrier
    custom,              // tabulated, linearly interpolated
};

const char* potential_kind_name(PotentialKind k);

struct Potential {
    PotentialKind kind = PotentialKind::custom;
    double x_min = 0.0;
    double x_max = 0.0;
    double mass = 1.0;
    // Dirichlet walls are part of the physics (particle in a box); skips the
    // boundary-contamination check in solve_well.
    bool hard_walls = false;
    std::function<double(double)> v;
    std::string label;

    static Potential flat(double x_min, double x_max, double mass = 1.0);
    static Potential harmonic(double omega, double x_min, double x_max, double mass = 1.0);
    static Potential quartic_double_well(double a, double b, double x_min, double x_max,
                                         double mass = 1.0);
    static Potential biased_quartic(double a, double b, double tilt, double x_min,
                                    double x_max, double mass = 1.0);
    // Wells of the given width and floor -depth on both sides of a central
    // barrier (width barrier_width, top barrier_height above the floor);
    // bias > 0 lowers the left floor by bias/2 and raises the right by the
    // same amount.  V = 0 outside the wells.
    static Potential square_double_well(double depth, double width, double barrier_width,
                                        double barrier_height, double bias, double x_min,
                                        double x_max, double mass = 1.0);
    // Strictly increasing x column; the domain is the table range.
    static Potential custom_table(std::vector<double> x, std::vector<double> v,
                                  double mass = 1.0);
    // Two-column whitespace-separated text, '#' starts a comment line.
    static Potential from_table_file(const std::string& path, double mass = 1.0);

    void validate() const;
};

enum class Parity { symmetric, antisymmetric, none };

const char* parity_name(Parity p);

struct WellSolution {
    std::vector<double> grid;  // interior points; psi = 0 at both domain ends
    double dx = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    double mass = 1.0;
    std::vector<double> potential;                   // V on the grid
    std::vector<double> eigenvalues;                 // ascending
    std::vector<std::vector<double>> eigenfunctions; // [state][grid point], sum psi^2 dx = 1
    std::vector<Parity> parity_flags;
    double delta = 0.0;  // E1 - E0 of the lowest doublet

    int n_states() const { return static_cast<int>(eigenvalues.size()); }
};

// Second-order central finite differences with Dirichlet boundaries; lowest
// n_states eigenpairs by Sturm bisection + inverse iteration.  Eigenfunction
// signs are fixed so the first non-negligible grid value from the right is
// positive, which reproduces the psi_2 = [phi(x) - phi(-x)]/sqrt(2) parity
// convention of the localized-state decomposition.
// Errors: NotConfined when an eigenfunction keeps more than 1e-6 of its norm
// in the outer 5% of the domain (unless the potential declares hard walls),
// DegenerateDoublet when consecutive eigenvalues are closer than 1e-12.
WellSolution solve_well(const Potential& pot, int n_points, int n_states);

struct LocalizedPair {
    std::vector<double> phi_right;  // (psi_1 + psi_2)/sqrt(2)
    std::vector<double> phi_left;   // (psi_1 - psi_2)/sqrt(2)
};

LocalizedPair localized_states(const WellSolution& sol);

struct RabiOverlaps {
    double omega1 = 0.0;
    double omega2 = 0.0;
};

// Omega_i = -mu_E * sum_grid psi_i psi_3 dx with psi_3 =
// excited.eigenfunctions[excited_index]; GridMismatch unless both solutions
// share the grid.
RabiOverlaps rabi_overlaps(const WellSolution& ground, const WellSolution& excited,
                           double mu_E, int excited_index);

// Fraction of norm^2 at x < 0 (diagnostic for localized states).
double left_side_fraction(const WellSolution& sol, const std::vector<double>& psi);

}  // namespace darkwell
