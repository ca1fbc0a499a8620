#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waveritz/errors.hpp"
#include "waveritz/oracle.hpp"
#include "waveritz/predictor.hpp"

#include <cmath>

using namespace waveritz;

namespace {

Problem& harmonic_problem() {
    static Problem prob = Problem::harmonic(4, 1.0, 8.0);
    return prob;
}

SpectralSolution& solution(int level) {
    static std::map<int, SpectralSolution> cache;
    auto it = cache.find(level);
    if (it == cache.end())
        it = cache.emplace(level, solve_level(harmonic_problem(), level, 6)).first;
    return it->second;
}

} // namespace

TEST_CASE("alpha closed form") {
    // R = 0 -> no correction
    AlphaResult a = alpha(0.5, 100.0, 0.0);
    CHECK(a.alpha == 0.0);
    CHECK(a.lambda == 0.0);

    // lambda = 0: the energy-lowering root has sign opposite to R
    a = alpha(5.0, 5.0, 1.0);
    CHECK(a.lambda == 0.0);
    CHECK(a.alpha == doctest::Approx(-1.0).epsilon(1e-15));
    a = alpha(5.0, 5.0, -1.0);
    CHECK(a.alpha == doctest::Approx(1.0).epsilon(1e-15));

    // stationarity alpha^2 + 2 lambda alpha - 1 = 0 and energy descent
    for (double r : {0.5, -0.25, 1e-3, -1e-7}) {
        for (double w : {2.0, 15.0, 3000.0}) {
            double e = 0.5;
            AlphaResult res = alpha(e, w, r);
            double defect = res.alpha * res.alpha + 2.0 * res.lambda * res.alpha - 1.0;
            CHECK(std::abs(defect) < 1e-10);
            CHECK(single_wavelet_energy(e, w, r, res.alpha) <= e + 1e-14);
            // the gain of the stationary point is exactly alpha * R
            CHECK(single_wavelet_energy(e, w, r, res.alpha) - e ==
                  doctest::Approx(res.alpha * r).epsilon(1e-9));
        }
    }

    // asymptotic regime: alpha approaches 1/(2 lambda)
    a = alpha(0.5, 2000.0, 0.001);
    CHECK(a.lambda == doctest::Approx(-999750.0).epsilon(1e-12));
    CHECK(std::abs(a.alpha - 1.0 / (2.0 * a.lambda)) < 1e-6 * std::abs(a.alpha));

    // two-by-two exact minimum comparison
    {
        double e = 0.5, w = 10.0, r = 0.1;
        AlphaResult res = alpha(e, w, r);
        double tr = e + w, det = e * w - r * r;
        double mu = 0.5 * tr - std::sqrt(0.25 * tr * tr - det);
        CHECK(single_wavelet_energy(e, w, r, res.alpha) == doctest::Approx(mu).epsilon(1e-13));
    }

    // extreme lambda does not overflow
    a = alpha(0.0, 1e308, 1e-8);
    CHECK(std::isfinite(a.alpha));
}

TEST_CASE("cross terms: exact zeros, scaling, and the quadrature oracle") {
    Problem& prob = harmonic_problem();
    SpectralSolution& sol = solution(3);
    CrossTerms terms = cross_terms(prob, sol, 0, 3);

    // window-edge candidates barely graze the state's own edge
    CHECK(std::abs(terms.r.front()) < 1e-10);
    CHECK(std::abs(terms.r.back()) < 1e-10);

    // a candidate outside the window has disjoint support: exactly zero
    double far = operator_row(prob.model, prob.fb, prob.ct,
                              {BasisFunction::Wavelet, 3, 200}, sol.state_vector(0));
    CHECK(far == 0.0);

    // kinetic ratio between levels at the same normalized position
    CrossTerms coarse = cross_terms(prob, solution(2), 0, 2);
    auto kin = [&](int m, int k) {
        return wavelet_diagonal_parts(prob.model, prob.ct, prob.fb, m, k).first;
    };
    CHECK(std::abs(kin(3, 8) / kin(2, 4) - 4.0) < 1e-10);
    (void)coarse;

    // ten sampled entries against the quadrature oracle
    LevelVector psi = sol.state_vector(0);
    for (int k = -10; k < 10; k += 2) {
        double r_quad = quad_row_matrix_element(prob, BasisFunction::Wavelet, 3, k, psi, 10);
        CHECK(std::abs(terms.r[k - terms.kmin] - r_quad) < 1e-6);
        double w_quad = quad_basis_matrix_element(prob, BasisFunction::Wavelet, 3, k,
                                                  BasisFunction::Wavelet, 3, k, 10);
        CHECK(std::abs(terms.w[k - terms.kmin] - w_quad) < 1e-6);
    }

    CHECK_THROWS_AS(cross_terms(prob, sol, 17, 3), ParameterError);
}

TEST_CASE("predicted record satisfies the Ritz invariants") {
    Problem& prob = harmonic_problem();
    SpectralSolution& sol = solution(2);
    PredictionRecord rec = predict_level(prob, sol, 0, PredictionMode::Additive);

    double e = rec.source_energy;
    for (size_t i = 0; i < rec.coeff.size(); ++i) {
        double r = rec.r[i], w = rec.w[i], a = rec.coeff[i];
        if (r == 0.0) {
            CHECK(a == 0.0);
            continue;
        }
        // energy never increases, and the stationary point is a minimum
        CHECK(single_wavelet_energy(e, w, r, a) <= e + 1e-14);
        double h = 1e-6;
        double d1 = (single_wavelet_energy(e, w, r, a + h) -
                     single_wavelet_energy(e, w, r, a - h)) / (2 * h);
        double d2 = (single_wavelet_energy(e, w, r, a + h) -
                     2 * single_wavelet_energy(e, w, r, a) +
                     single_wavelet_energy(e, w, r, a - h)) / (h * h);
        CHECK(std::abs(d1) / (std::abs(w - e) + 1.0) < 1e-4);
        CHECK(d2 > 0.0);
    }

    // predicted vector: norm accounting and multilevel block structure
    CHECK(rec.predicted.level == 3);
    double n2 = 0.0;
    for (double c : rec.predicted.coeffs) n2 += c * c;
    CHECK(std::abs(n2 - rec.predicted_norm2) < 1e-12);
    BasisLayout target = make_layout(3, prob.half_width, prob.fb.support());
    CHECK(static_cast<int>(rec.multilevel.size()) == target.multilevel_dim());

    // the sign of the prediction matches the eigensolve truth at level M+1
    SpectralSolution& fine = solution(3);
    const BasisLayout& fl = fine.layout;
    int off = fl.wavelet_offset(2);
    double overlap = 0.0;
    LevelVector up = prolong(sol.state_vector(0), prob.fb, 3);
    for (int r = 0; r < fine.vectors_single.rows(); ++r)
        overlap += fine.vectors_single(r, 0) * up.at(fl.single_window.kmin + r);
    double sign = overlap >= 0 ? 1.0 : -1.0;
    for (size_t i = 0; i < rec.coeff.size(); ++i) {
        double truth = sign * fine.vectors_multilevel(off + static_cast<int>(i), 0);
        if (std::abs(truth) > 1e-8)
            CHECK(rec.coeff[i] * truth > 0.0);
    }
}

TEST_CASE("prediction modes: additive identity and rayleigh bound") {
    Problem& prob = harmonic_problem();
    SpectralSolution& sol = solution(1);

    PredictionRecord add = predict_level(prob, sol, 0, PredictionMode::Additive);
    double gain = 0.0;
    for (size_t i = 0; i < add.coeff.size(); ++i) gain += add.coeff[i] * add.r[i];
    CHECK(add.predicted_energy == doctest::Approx(add.source_energy + gain).epsilon(1e-14));
    CHECK(add.predicted_energy < add.source_energy);

    PredictionRecord ray = predict_level(prob, sol, 0, PredictionMode::Rayleigh);
    CHECK(ray.predicted_energy >= 0.5); // variational bound
    CHECK(ray.predicted_energy < ray.source_energy);

    PredictionRecord mix = predict_level(prob, sol, 0, PredictionMode::Mixed);
    CHECK(mix.predicted_energy ==
          doctest::Approx((mix.source_energy + gain) / mix.predicted_norm2).epsilon(1e-13));
}

TEST_CASE("select_indices thresholding") {
    PredictionRecord rec;
    rec.kmin = 10;
    rec.coeff = {0.0, 0.5, -1.0, 0.25, 1.0};
    auto all = select_indices(rec, 1e-12);
    CHECK(all == std::vector<int>{11, 12, 13, 14});
    auto top = select_indices(rec, 1.0);
    CHECK(top == std::vector<int>{12, 14}); // ties at the maximum are kept
    auto half = select_indices(rec, 0.5);
    CHECK(half == std::vector<int>{11, 12, 14});
    CHECK_THROWS_AS(select_indices(rec, 0.0), ParameterError);

    PredictionRecord empty;
    CHECK(select_indices(empty, 0.5).empty());
}

TEST_CASE("adaptive selection follows the exact coefficient profile") {
    Problem& prob = harmonic_problem();
    PredictionRecord rec = predict_level(prob, solution(3), 0, PredictionMode::Additive);
    std::vector<int> sel = select_indices(rec, 1e-3);
    CHECK(!sel.empty());
    ExactState ex = exact_state(0, 1.0);
    std::vector<double> dex = exact_wavelet_coefficients(ex, prob.half_width, prob.fb, 3);
    double dmax = 0.0;
    int arg = 0;
    for (size_t i = 0; i < rec.coeff.size(); ++i)
        if (std::abs(rec.coeff[i]) > std::abs(rec.coeff[arg])) arg = static_cast<int>(i);
    for (double d : dex) dmax = std::max(dmax, std::abs(d));
    // the dominant index sits near the center of the state...
    CHECK(std::abs(std::ldexp(double(rec.kmin + arg), -3)) < 2.0);
    // ...and everything selected is genuinely significant per the oracle
    for (int k : sel)
        CHECK(std::abs(dex[k - rec.kmin]) > 1e-4 * dmax);
}

TEST_CASE("secondary prediction structure and conventions") {
    Problem& prob = harmonic_problem();
    PredictionRecord first = predict_level(prob, solution(1), 0, PredictionMode::Additive);
    PredictionRecord sec = secondary_predict(prob, first, BetaConvention::Normalized);

    CHECK(sec.stage == PredictionStage::Secondary);
    CHECK(sec.target_wavelet_level == 2);
    CHECK(sec.predicted.level == 3);
    CHECK(sec.source_energy == first.predicted_energy);

    // Window-edge candidates barely touch the predicted state; whenever R is
    // exactly zero the closed form must hand back a zero coefficient.
    CHECK(std::abs(sec.r.front()) < 1e-10);
    for (size_t i = 0; i < sec.r.size(); ++i)
        if (sec.r[i] == 0.0) CHECK(sec.coeff[i] == 0.0);

    // norm bookkeeping
    double b2 = 0.0;
    for (double b : sec.coeff) b2 += b * b;
    CHECK(std::abs(sec.predicted_norm2 - (first.predicted_norm2 + b2)) < 1e-12);

    PredictionRecord verb = secondary_predict(prob, first, BetaConvention::Verbatim);
    CHECK(verb.coeff.size() == sec.coeff.size());
    // conventions differ, but only mildly when the predicted norm is near 1
    double diff = 0.0, scale = 0.0;
    for (size_t i = 0; i < sec.coeff.size(); ++i) {
        diff = std::max(diff, std::abs(sec.coeff[i] - verb.coeff[i]));
        scale = std::max(scale, std::abs(sec.coeff[i]));
    }
    CHECK(diff > 0.0);
    CHECK(diff < 0.5 * scale);

    CHECK_THROWS_AS(secondary_predict(prob, sec, BetaConvention::Normalized), ParameterError);
}

TEST_CASE("secondary betas track the exact coefficients") {
    Problem& prob = harmonic_problem();
    PredictionRecord first = predict_level(prob, solution(2), 0, PredictionMode::Additive);
    PredictionRecord sec = secondary_predict(prob, first, BetaConvention::Normalized);
    ExactState ex = exact_state(0, 1.0);
    std::vector<double> dex = exact_wavelet_coefficients(ex, prob.half_width, prob.fb, 3);
    REQUIRE(dex.size() == sec.coeff.size());
    double err = 0.0, ref = 0.0;
    for (size_t i = 0; i < dex.size(); ++i) {
        err += (sec.coeff[i] - dex[i]) * (sec.coeff[i] - dex[i]);
        ref += dex[i] * dex[i];
    }
    // closer to the truth than the zero prediction, oscillation allowed
    CHECK(err < ref);
}

TEST_CASE("smooth average") {
    std::vector<double> c = {3.0, 3.0, 3.0, 3.0};
    auto out = smooth_average(c, 3);
    for (double v : out) CHECK(v == doctest::Approx(3.0).epsilon(1e-15));

    std::vector<double> alt = {0.0, 1.0, 0.0, 1.0, 0.0};
    out = smooth_average(alt, 3);
    std::vector<double> expect = {0.5, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0, 0.5};
    REQUIRE(out.size() == expect.size());
    for (size_t i = 0; i < out.size(); ++i)
        CHECK(out[i] == doctest::Approx(expect[i]).epsilon(1e-15));

    CHECK_THROWS_AS(smooth_average(alt, 4), ParameterError);
    CHECK_THROWS_AS(smooth_average(alt, 1), ParameterError);
}

TEST_CASE("averaging improves the secondary prediction") {
    Problem& prob = harmonic_problem();
    PredictionRecord first = predict_level(prob, solution(2), 0, PredictionMode::Additive);
    PredictionRecord sec = secondary_predict(prob, first, BetaConvention::Normalized);
    std::vector<double> avg = smooth_average(sec.coeff, 3);
    ExactState ex = exact_state(0, 1.0);
    std::vector<double> dex = exact_wavelet_coefficients(ex, prob.half_width, prob.fb, 3);
    double rms_raw = 0.0, rms_avg = 0.0;
    for (size_t i = 0; i < dex.size(); ++i) {
        rms_raw += (sec.coeff[i] - dex[i]) * (sec.coeff[i] - dex[i]);
        rms_avg += (avg[i] - dex[i]) * (avg[i] - dex[i]);
    }
    CHECK(rms_avg <= rms_raw);
}
