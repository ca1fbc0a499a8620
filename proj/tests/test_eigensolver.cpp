#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waveritz/eigensolver.hpp"
#include "waveritz/errors.hpp"

#include <cmath>

using namespace waveritz;

TEST_CASE("two by two analytic eigenvalues") {
    Eigen::MatrixXd m(2, 2);
    m << 2, 1, 1, 2;
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    sym_eigensolve(m, vals, vecs);
    CHECK(vals(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(vals(1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("asymmetric input is rejected") {
    Eigen::MatrixXd m(2, 2);
    m << 2, 1, 1.5, 2;
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    CHECK_THROWS_AS(sym_eigensolve(m, vals, vecs), DegeneracyError);
}

TEST_CASE("level 0 and level 2 oscillator energies") {
    Problem prob = Problem::harmonic(4, 1.0, 8.0);
    SpectralSolution s0 = solve_level(prob, 0, 6);
    CHECK(std::abs(s0.energy(0) - 0.517112256390810) < 1e-8);

    SpectralSolution s2 = solve_level(prob, 2, 6);
    CHECK(std::abs(s2.energy(5) - 5.509890004116425) < 1e-8);
}

TEST_CASE("solution invariants: residuals, orthonormality, ordering") {
    Problem prob = Problem::harmonic(4, 1.0, 6.0);
    BasisLayout layout = make_layout(2, prob.half_width, prob.fb.support());
    HamiltonianMatrix h = assemble_single_level(prob.model, layout, prob.ct);
    SpectralSolution sol = solve(h, 6, prob.fb);

    double hnorm = h.mat.norm();
    for (int i = 0; i < 6; ++i) {
        CHECK(sol.residual_norms[i] <= 1e-10 * hnorm);
        if (i > 0) CHECK(sol.eigenvalues[i] >= sol.eigenvalues[i - 1]);
        for (int j = 0; j <= i; ++j) {
            double dot = sol.vectors_single.col(i).dot(sol.vectors_single.col(j));
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
    // multilevel coordinates are an isometric image
    for (int i = 0; i < 6; ++i)
        CHECK(std::abs(sol.vectors_multilevel.col(i).norm() - 1.0) < 1e-12);
}

TEST_CASE("rayleigh quotient basics") {
    Problem prob = Problem::harmonic(4, 1.0, 6.0);
    BasisLayout layout = make_layout(1, prob.half_width, prob.fb.support());
    HamiltonianMatrix h = assemble_single_level(prob.model, layout, prob.ct);
    SpectralSolution sol = solve(h, 2, prob.fb);

    std::vector<double> v(sol.vectors_single.col(0).data(),
                          sol.vectors_single.col(0).data() + h.dim());
    CHECK(std::abs(rayleigh_quotient(h, v) - sol.energy(0)) < 1e-10);

    std::vector<double> e(h.dim(), 0.0);
    e[3] = 1.0;
    CHECK(rayleigh_quotient(h, e) == doctest::Approx(h.mat(3, 3)).epsilon(1e-15));

    std::vector<double> zero(h.dim(), 0.0);
    CHECK_THROWS_AS(rayleigh_quotient(h, zero), ParameterError);
}

TEST_CASE("interlacing and exact lower bounds across levels") {
    Problem prob = Problem::harmonic(4, 1.0, 8.0);
    std::vector<SpectralSolution> sols;
    for (int m = 0; m <= 3; ++m) sols.push_back(solve_level(prob, m, 6));
    for (int m = 0; m + 1 <= 3; ++m)
        for (int i = 0; i < 6; ++i)
            CHECK(sols[m + 1].energy(i) <= sols[m].energy(i) + 1e-12);
    for (const auto& s : sols)
        for (int i = 0; i < 6; ++i) CHECK(s.energy(i) >= (i + 0.5) - 1e-12);
}

TEST_CASE("state tracking matches by overlap") {
    Problem prob = Problem::harmonic(4, 1.0, 8.0);
    SpectralSolution coarse = solve_level(prob, 1, 5);
    SpectralSolution fine = solve_level(prob, 2, 5);
    std::vector<int> match = track_states(coarse, fine, prob.fb);
    for (int i = 0; i < 5; ++i) CHECK(match[i] == i);
}

TEST_CASE("invalid state counts are rejected") {
    Problem prob = Problem::harmonic(4, 1.0, 4.0);
    BasisLayout layout = make_layout(0, prob.half_width, prob.fb.support());
    HamiltonianMatrix h = assemble_single_level(prob.model, layout, prob.ct);
    CHECK_THROWS_AS(solve(h, 0, prob.fb), ParameterError);
    CHECK_THROWS_AS(solve(h, h.dim() + 1, prob.fb), ParameterError);
}
