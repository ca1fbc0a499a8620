#ifndef WAVERITZ_EIGENSOLVER_HPP
#define WAVERITZ_EIGENSOLVER_HPP

#include "waveritz/assembly.hpp"
#include "waveritz/problem.hpp"

#include <span>
#include <vector>

namespace waveritz {

/// Lowest eigenpairs of a level-M Hamiltonian. Eigenvalues ascend and cover
/// the full spectrum; the retained eigenvectors are stored both in the
/// single-level scaling coordinates used for operator work and in the
/// multilevel coordinates of the layout.
struct SpectralSolution {
    int level = 0;
    BasisLayout layout;
    int n_states = 0;
    std::vector<double> eigenvalues;    ///< all, ascending
    Eigen::MatrixXd vectors_single;     ///< single_dim x n_states
    Eigen::MatrixXd vectors_multilevel; ///< multilevel_dim x n_states
    std::vector<double> residual_norms; ///< ||H v - E v|| per retained state

    double energy(int i) const { return eigenvalues.at(i); }
    LevelVector state_vector(int i) const;
};

/// Dense symmetric eigendecomposition (tridiagonalization based), ascending.
/// Throws if the matrix is not symmetric to 1e-12 relative.
void sym_eigensolve(const Eigen::MatrixXd& mat, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

/// Solve the level-M problem and retain the lowest n_states eigenpairs.
/// Nearly degenerate clusters (gap < 1e-8) are re-orthonormalized.
SpectralSolution solve(const HamiltonianMatrix& h, int n_states, const FilterBank& fb);

/// Assemble and solve the level-M problem of `prob` in one call.
SpectralSolution solve_level(const Problem& prob, int level, int n_states);

double rayleigh_quotient(const HamiltonianMatrix& h, std::span<const double> v);

/// Match states of `coarse` to states of `fine` (one level up) by maximal
/// overlap of the pyramid-prolonged eigenvectors; returns per-coarse-state
/// indices into `fine`.
std::vector<int> track_states(const SpectralSolution& coarse, const SpectralSolution& fine,
                              const FilterBank& fb);

} // namespace waveritz

#endif
