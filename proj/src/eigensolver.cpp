#include "waveritz/eigensolver.hpp"
#include "waveritz/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace waveritz {

LevelVector SpectralSolution::state_vector(int i) const {
    LevelVector v;
    v.level = level;
    v.kmin = layout.single_window.kmin;
    v.coeffs.assign(vectors_single.col(i).data(), vectors_single.col(i).data() + vectors_single.rows());
    return v;
}

void sym_eigensolve(const Eigen::MatrixXd& mat, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    double scale = mat.cwiseAbs().maxCoeff();
    double asym = (mat - mat.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0 && asym > 1e-12 * scale)
        throw DegeneracyError("matrix is not symmetric within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
    if (es.info() != Eigen::Success)
        throw DegeneracyError("symmetric eigendecomposition failed to converge");
    values = es.eigenvalues();
    vectors = es.eigenvectors();
}

SpectralSolution solve(const HamiltonianMatrix& h, int n_states, const FilterBank& fb) {
    if (h.rep != Representation::SingleLevel)
        throw LayoutError("solve expects the single-level representation");
    if (n_states < 1 || n_states > h.dim())
        throw ParameterError("n_states out of range");

    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    sym_eigensolve(h.mat, values, vectors);

    SpectralSolution sol;
    sol.level = h.layout.top_level;
    sol.layout = h.layout;
    sol.n_states = n_states;
    sol.eigenvalues.assign(values.data(), values.data() + values.size());
    sol.vectors_single = vectors.leftCols(n_states);

    // Re-orthonormalize within nearly degenerate clusters so downstream
    // overlap tracking is stable.
    int i = 0;
    while (i < n_states) {
        int j = i + 1;
        while (j < n_states && std::abs(values(j) - values(j - 1)) < 1e-8) ++j;
        if (j - i > 1) {
            Eigen::MatrixXd block = sol.vectors_single.middleCols(i, j - i);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
            sol.vectors_single.middleCols(i, j - i) =
                qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), j - i);
        }
        i = j;
    }

    // Deterministic sign convention: the largest-magnitude coefficient of
    // each state is positive.
    for (int s = 0; s < n_states; ++s) {
        int arg = 0;
        sol.vectors_single.col(s).cwiseAbs().maxCoeff(&arg);
        if (sol.vectors_single(arg, s) < 0) sol.vectors_single.col(s) *= -1.0;
    }

    sol.residual_norms.resize(n_states);
    for (int s = 0; s < n_states; ++s)
        sol.residual_norms[s] =
            (h.mat * sol.vectors_single.col(s) - values(s) * sol.vectors_single.col(s)).norm();

    sol.vectors_multilevel.resize(h.layout.multilevel_dim(), n_states);
    for (int s = 0; s < n_states; ++s) {
        std::span<const double> col(sol.vectors_single.col(s).data(),
                                    static_cast<size_t>(sol.vectors_single.rows()));
        std::vector<double> multi = pyramid_analysis(col, h.layout, fb);
        for (int r = 0; r < static_cast<int>(multi.size()); ++r) sol.vectors_multilevel(r, s) = multi[r];
    }
    return sol;
}

SpectralSolution solve_level(const Problem& prob, int level, int n_states) {
    BasisLayout layout = make_layout(level, prob.half_width, prob.fb.support());
    HamiltonianMatrix h = assemble_single_level(prob.model, layout, prob.ct);
    return solve(h, n_states, prob.fb);
}

double rayleigh_quotient(const HamiltonianMatrix& h, std::span<const double> v) {
    if (static_cast<int>(v.size()) != h.dim())
        throw LayoutError("vector dimension does not match the matrix");
    Eigen::Map<const Eigen::VectorXd> x(v.data(), v.size());
    double nrm2 = x.squaredNorm();
    if (nrm2 == 0.0) throw ParameterError("rayleigh quotient of the zero vector");
    return x.dot(h.mat * x) / nrm2;
}

std::vector<int> track_states(const SpectralSolution& coarse, const SpectralSolution& fine,
                              const FilterBank& fb) {
    std::vector<int> match(coarse.n_states, -1);
    std::vector<bool> used(fine.n_states, false);
    for (int i = 0; i < coarse.n_states; ++i) {
        LevelVector up = prolong(coarse.state_vector(i), fb, fine.level);
        double best = -1.0;
        int arg = -1;
        for (int j = 0; j < fine.n_states; ++j) {
            if (used[j]) continue;
            double ov = 0.0;
            for (int r = 0; r < fine.vectors_single.rows(); ++r)
                ov += fine.vectors_single(r, j) * up.at(fine.layout.single_window.kmin + r);
            ov = std::abs(ov);
            if (ov > best) {
                best = ov;
                arg = j;
            }
        }
        match[i] = arg;
        if (arg >= 0) used[arg] = true;
    }
    return match;
}

} // namespace waveritz
