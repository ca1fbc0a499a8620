#ifndef WAVERITZ_ORACLE_HPP
#define WAVERITZ_ORACLE_HPP

#include "waveritz/cascade.hpp"
#include "waveritz/layout.hpp"
#include "waveritz/model.hpp"
#include "waveritz/problem.hpp"
#include "waveritz/transform.hpp"

#include <functional>
#include <vector>

namespace waveritz {

/// Analytic harmonic-oscillator eigenstate psi_i(x) = N_i H_i(sqrt(w) x)
/// exp(-w x^2 / 2) with physicists' Hermite polynomials.
struct ExactState {
    int index = 0;
    double omega = 1.0;
    double energy = 0.5;

    double value(double x) const;
};

ExactState exact_state(int index, double omega);

/// Uniformly sampled function on a grid x0 + j*dx, used by the quadrature
/// oracle.
struct GridFunction {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> values;
};

enum class OperatorKind { Kinetic, Potential, Overlap };

/// Trapezoid estimate of <bra|Op|ket> on a common grid; the kinetic term uses
/// centered second differences. Accuracy is O(dx^2) plus the
/// finite-difference error of the sampled functions.
double quad_matrix_element(const GridFunction& bra, const GridFunction& ket, OperatorKind op,
                           const ModelSystem& model);

/// Samples of the basis function chi_{level,shift} on the dyadic grid of
/// depth `depth` below level 0 (grid spacing 2^-depth over the function's
/// support).
GridFunction basis_grid_function(const FilterBank& fb, BasisFunction which, int level, int shift,
                                 int depth);

/// Pointwise samples of a level vector on the grid of spacing 2^-depth.
GridFunction level_vector_grid_function(const LevelVector& v, const FilterBank& fb, int depth);

/// High-accuracy quadrature of <chi_bra|H|chi_ket> for basis functions: the
/// potential part is a plain trapezoid at `depth`; the kinetic part is
/// extrapolated across three refinement depths with the empirically
/// estimated convergence rate (the sampled functions are below C^2, so plain
/// h^2 extrapolation is not enough).
double quad_basis_matrix_element(const Problem& prob, BasisFunction bra_type, int bra_level,
                                 int bra_shift, BasisFunction ket_type, int ket_level,
                                 int ket_shift, int depth);

/// Same extrapolated quadrature for <chi_bra|H|Psi> with Psi a level vector.
double quad_row_matrix_element(const Problem& prob, BasisFunction bra_type, int bra_level,
                               int bra_shift, const LevelVector& ket, int depth);

struct ProjectionResult {
    std::vector<double> multilevel;  ///< coefficients in the layout ordering
    double fine_residual = 0.0;      ///< max |projection - psi| on the fine grid
    double dropped_tail_weight = 0.0;///< squared norm above the layout's top level
    bool precision_warning = false;  ///< fine_residual exceeded the 1e-6 target
};

/// Exact-coefficient projection d^exact: sample psi against cascade samples
/// on a fine dyadic grid (level top+fine_margin), then pyramid-analyze down
/// to the layout.
ProjectionResult project_exact(const ExactState& state, const BasisLayout& layout,
                               const FilterBank& fb, int fine_margin = 4, int quad_depth = 10);

/// Wavelet-level-m expansion coefficients of psi over the level-m window
/// (the finest detail block of a projection onto a layout at top level m+1).
std::vector<double> exact_wavelet_coefficients(const ExactState& state, double half_width,
                                               const FilterBank& fb, int wavelet_level);

} // namespace waveritz

#endif
