#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waveritz/errors.hpp"
#include "waveritz/transform.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace waveritz;

TEST_CASE("window formula covers exactly the support-intersecting shifts") {
    IndexWindow w = level_window(8.0, 0, 7);
    CHECK(w.kmin == -15);
    CHECK(w.kmax == 8);
    w = level_window(8.0, 3, 7);
    CHECK(w.kmin == -71);
    CHECK(w.kmax == 64);
}

TEST_CASE("layout dimensions and flattening") {
    BasisLayout l = make_layout(3, 8.0, 7);
    CHECK(l.single_dim() == l.single_window.size());
    CHECK(l.single_window.size() == 8 * 16 + 8);
    // multilevel carries one extra closure margin of N_s + 1 per level
    CHECK(l.multilevel_dim() == l.single_dim() + 3 * 8);
    CHECK(l.wavelet_offset(0) == l.scaling_window.size());
    CHECK(l.wavelet_offset(2) ==
          l.scaling_window.size() + l.wavelet_windows[0].size() + l.wavelet_windows[1].size());
    CHECK_THROWS_AS(make_layout(-1, 8.0, 7), LayoutError);
    CHECK_THROWS_AS(make_layout(2, -1.0, 7), LayoutError);
}

TEST_CASE("haar analysis of a constant pair has no detail") {
    FilterBank fb = build_filter(1);
    BasisLayout l = make_layout(1, 1.0, 1);
    std::vector<double> v(l.single_dim(), 0.0);
    // place (1,1)/sqrt2 on the dyadic pair (0,1)
    int base = -l.single_window.kmin;
    v[base] = 1.0 / std::numbers::sqrt2;
    v[base + 1] = 1.0 / std::numbers::sqrt2;
    std::vector<double> multi = pyramid_analysis(v, l, fb);
    int scaling0 = l.scaling_offset() - l.scaling_window.kmin; // index of k = 0
    CHECK(multi[scaling0] == doctest::Approx(1.0).epsilon(1e-14));
    int detail0 = l.wavelet_offset(0) - l.wavelet_windows[0].kmin;
    CHECK(std::abs(multi[detail0]) < 1e-15);
}

TEST_CASE("pyramid is an isometry and round-trips exactly") {
    FilterBank fb = build_filter(4);
    BasisLayout l = make_layout(3, 6.0, fb.support());
    std::mt19937_64 rng(20240811);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(l.single_dim());
        for (auto& x : v) x = gauss(rng);
        std::vector<double> multi = pyramid_analysis(v, l, fb);
        double n1 = 0, n2 = 0;
        for (double x : v) n1 += x * x;
        for (double x : multi) n2 += x * x;
        CHECK(std::abs(std::sqrt(n1) - std::sqrt(n2)) < 1e-12);

        std::vector<double> back = pyramid_synthesis(multi, l, fb);
        double worst = 0.0;
        for (size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(back[i] - v[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("transform rejects mismatched dimensions") {
    FilterBank fb = build_filter(4);
    BasisLayout l = make_layout(2, 4.0, fb.support());
    std::vector<double> bad(l.single_dim() + 1, 0.0);
    CHECK_THROWS_AS(pyramid_analysis(bad, l, fb), LayoutError);
    CHECK_THROWS_AS(pyramid_synthesis(bad, l, fb), LayoutError);
}

TEST_CASE("M=0 transform is the identity") {
    FilterBank fb = build_filter(4);
    BasisLayout l = make_layout(0, 4.0, fb.support());
    std::vector<double> v(l.single_dim());
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.3 * i);
    std::vector<double> multi =
        multilevel_transform(v, l, fb, TransformDirection::Analysis);
    REQUIRE(multi.size() == v.size());
    for (size_t i = 0; i < v.size(); ++i) CHECK(multi[i] == v[i]);
}

TEST_CASE("prolongation preserves the represented function") {
    // Prolonged coefficients must reproduce the same inner products: check
    // the norm, which the refinement preserves exactly.
    FilterBank fb = build_filter(4);
    LevelVector v{2, -5, {}};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    v.coeffs.resize(17);
    for (auto& c : v.coeffs) c = gauss(rng);
    LevelVector fine = prolong(v, fb, 5);
    CHECK(fine.level == 5);
    double n1 = 0, n2 = 0;
    for (double c : v.coeffs) n1 += c * c;
    for (double c : fine.coeffs) n2 += c * c;
    CHECK(std::abs(n1 - n2) < 1e-12 * n1);
}

TEST_CASE("basis function expansion matches the analysis adjoint") {
    // The multilevel coefficient vector of w_{1,k} must synthesize to the
    // same level-M expansion that basis_function_expansion builds.
    FilterBank fb = build_filter(4);
    BasisLayout l = make_layout(3, 4.0, fb.support());
    int k = 0;
    std::vector<double> multi(l.multilevel_dim(), 0.0);
    multi[l.wavelet_offset(1) + (k - l.wavelet_windows[1].kmin)] = 1.0;
    std::vector<double> single = pyramid_synthesis(multi, l, fb);

    LevelVector direct = basis_function_expansion(fb, true, 1, k, 3);
    double worst = 0.0;
    for (int kk = l.single_window.kmin; kk <= l.single_window.kmax; ++kk) {
        double a = single[kk - l.single_window.kmin];
        worst = std::max(worst, std::abs(a - direct.at(kk)));
    }
    CHECK(worst < 1e-14);
}
