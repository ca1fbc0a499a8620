#include "waveritz/predictor.hpp"
#include "waveritz/errors.hpp"

#include <algorithm>
#include <cmath>

namespace waveritz {

std::string to_string(PredictionMode m) {
    switch (m) {
        case PredictionMode::Additive: return "additive";
        case PredictionMode::Rayleigh: return "rayleigh";
        case PredictionMode::Mixed: return "mixed";
    }
    return "additive";
}

PredictionMode prediction_mode_from_string(const std::string& s) {
    if (s == "additive") return PredictionMode::Additive;
    if (s == "rayleigh") return PredictionMode::Rayleigh;
    if (s == "mixed") return PredictionMode::Mixed;
    throw ParameterError("unknown prediction mode '" + s + "'");
}

AlphaResult alpha(double energy, double w, double r) {
    if (r == 0.0) return {0.0, 0.0};
    double lam = (energy - w) / (2.0 * r);
    double sq = std::hypot(lam, 1.0);
    double a;
    if (r > 0.0)
        a = (lam <= 0.0) ? -1.0 / (sq - lam) : -(lam + sq);
    else
        a = (lam >= 0.0) ? 1.0 / (sq + lam) : (sq - lam);
    return {lam, a};
}

double single_wavelet_energy(double energy, double w, double r, double a) {
    return (energy + 2.0 * a * r + a * a * w) / (1.0 + a * a);
}

namespace {

// Shared W/R computation against an arbitrary level vector: R_k = <w_k|H|v>
// and W_k = <w_k|H|w_k> over the candidate window at `wavelet_level`.
CrossTerms cross_terms_vector(const Problem& prob, const LevelVector& v, int wavelet_level) {
    int op_level = wavelet_level + 1;
    if (op_level < v.level) throw ParameterError("target wavelet level below the ket level");
    LevelVector fine = (v.level == op_level) ? v : prolong(v, prob.fb, op_level);
    LevelVector hv = apply_operator(prob.model, prob.ct, fine);

    IndexWindow win = level_window(prob.half_width, wavelet_level, prob.fb.support());
    int ns = prob.fb.support();
    const auto& g = prob.fb.highpass;

    CrossTerms out;
    out.kmin = win.kmin;
    out.w.resize(win.size());
    out.r.resize(win.size());
    double vnorm = 0.0;
    for (double c : fine.coeffs) vnorm += c * c;
    double ortho_tol = 1e-10 * std::max(1.0, std::sqrt(vnorm));
    for (int k = win.kmin; k <= win.kmax; ++k) {
        double r = 0.0;
        double overlap = 0.0;
        for (int i = 0; i <= ns; ++i) {
            r += g[i] * hv.at(2 * k + i);
            overlap += g[i] * fine.at(2 * k + i);
        }
        if (std::abs(overlap) > ortho_tol)
            throw DegeneracyError("candidate wavelet is not orthogonal to the state");
        out.r[k - win.kmin] = r;
        auto [kin, pot] = wavelet_diagonal_parts(prob.model, prob.ct, prob.fb, wavelet_level, k);
        out.w[k - win.kmin] = kin + pot;
    }
    return out;
}

double level_rayleigh(const Problem& prob, const LevelVector& v) {
    LevelVector hv = apply_operator(prob.model, prob.ct, v);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < static_cast<int>(v.coeffs.size()); ++i) {
        num += v.coeffs[i] * hv.at(v.kmin + i);
        den += v.coeffs[i] * v.coeffs[i];
    }
    if (den == 0.0) throw DegeneracyError("zero-norm state");
    return num / den;
}

double compose_energy(PredictionMode mode, const Problem& prob, double energy,
                      const std::vector<double>& coeff, const CrossTerms& terms,
                      const LevelVector& predicted) {
    double sum_ar = 0.0, sum_a2 = 0.0;
    for (size_t i = 0; i < coeff.size(); ++i) {
        sum_ar += coeff[i] * terms.r[i];
        sum_a2 += coeff[i] * coeff[i];
    }
    switch (mode) {
        case PredictionMode::Additive: return energy + sum_ar;
        case PredictionMode::Mixed: return (energy + sum_ar) / (1.0 + sum_a2);
        case PredictionMode::Rayleigh: return level_rayleigh(prob, predicted);
    }
    return energy + sum_ar;
}

} // namespace

CrossTerms cross_terms(const Problem& prob, const SpectralSolution& sol, int state,
                       int wavelet_level) {
    if (state < 0 || state >= sol.n_states) throw ParameterError("state index out of range");
    return cross_terms_vector(prob, sol.state_vector(state), wavelet_level);
}

PredictionRecord predict_level(const Problem& prob, const SpectralSolution& sol, int state,
                               PredictionMode mode) {
    PredictionRecord rec;
    rec.stage = PredictionStage::First;
    rec.mode = mode;
    rec.state = state;
    rec.source_level = sol.level;
    rec.target_wavelet_level = sol.level;
    rec.source_energy = sol.energy(state);
    rec.source_norm2 = 1.0;

    CrossTerms terms = cross_terms(prob, sol, state, sol.level);
    rec.kmin = terms.kmin;
    rec.w = terms.w;
    rec.r = terms.r;
    size_t n = terms.r.size();
    rec.lambda.resize(n);
    rec.coeff.resize(n);
    double sum_a2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        AlphaResult a = alpha(rec.source_energy, terms.w[i], terms.r[i]);
        rec.lambda[i] = a.lambda;
        rec.coeff[i] = a.alpha;
        sum_a2 += a.alpha * a.alpha;
    }

    // Psi_pred = Psi + sum_k alpha_k w_{M,k} as level-(M+1) coefficients. The
    // wavelet stencils stay inside the prolonged window because the candidate
    // window coincides with the state's own level-M window.
    rec.predicted = prolong(sol.state_vector(state), prob.fb, sol.level + 1);
    int ns = prob.fb.support();
    for (size_t i = 0; i < n; ++i) {
        if (rec.coeff[i] == 0.0) continue;
        int k = rec.kmin + static_cast<int>(i);
        for (int t = 0; t <= ns; ++t)
            rec.predicted.coeffs[2 * k + t - rec.predicted.kmin] +=
                rec.coeff[i] * prob.fb.highpass[t];
    }
    rec.predicted_norm2 = 1.0 + sum_a2;
    rec.predicted_energy =
        compose_energy(mode, prob, rec.source_energy, rec.coeff, terms, rec.predicted);

    rec.multilevel.resize(sol.vectors_multilevel.rows() + n);
    for (int i = 0; i < sol.vectors_multilevel.rows(); ++i)
        rec.multilevel[i] = sol.vectors_multilevel(i, state);
    std::copy(rec.coeff.begin(), rec.coeff.end(), rec.multilevel.begin() + sol.vectors_multilevel.rows());
    return rec;
}

std::vector<int> select_indices(const PredictionRecord& rec, double threshold) {
    if (threshold <= 0.0) throw ParameterError("selection threshold must be positive");
    std::vector<int> out;
    double amax = 0.0;
    for (double a : rec.coeff) amax = std::max(amax, std::abs(a));
    if (amax == 0.0) return out;
    for (size_t i = 0; i < rec.coeff.size(); ++i)
        if (std::abs(rec.coeff[i]) >= threshold * amax) out.push_back(rec.kmin + static_cast<int>(i));
    return out;
}

PredictionRecord secondary_predict(const Problem& prob, const PredictionRecord& first,
                                   BetaConvention convention) {
    if (first.stage != PredictionStage::First)
        throw ParameterError("secondary prediction starts from a first-stage record");
    double norm2 = first.predicted_norm2;
    if (!(norm2 > 1e-300)) throw DegeneracyError("predicted wavefunction has zero norm");
    double scale = std::sqrt(norm2);

    LevelVector base = first.predicted;
    if (convention == BetaConvention::Normalized)
        for (auto& c : base.coeffs) c /= scale;

    PredictionRecord rec;
    rec.stage = PredictionStage::Secondary;
    rec.mode = first.mode;
    rec.state = first.state;
    rec.source_level = first.source_level;
    rec.target_wavelet_level = first.target_wavelet_level + 1;
    rec.source_energy = first.predicted_energy;
    rec.source_norm2 = norm2;

    CrossTerms terms = cross_terms_vector(prob, base, rec.target_wavelet_level);
    rec.kmin = terms.kmin;
    rec.w = terms.w;
    rec.r = terms.r;
    size_t n = terms.r.size();
    rec.lambda.resize(n);
    rec.coeff.resize(n);
    std::vector<double> raw(n);
    double sum_b2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        AlphaResult b = alpha(rec.source_energy, terms.w[i], terms.r[i]);
        rec.lambda[i] = b.lambda;
        raw[i] = b.alpha;
        // Coefficient against the unnormalized predicted state.
        rec.coeff[i] = (convention == BetaConvention::Normalized) ? b.alpha * scale : b.alpha;
        sum_b2 += rec.coeff[i] * rec.coeff[i];
    }

    rec.predicted = prolong(first.predicted, prob.fb, rec.target_wavelet_level + 1);
    int ns = prob.fb.support();
    for (size_t i = 0; i < n; ++i) {
        if (rec.coeff[i] == 0.0) continue;
        int k = rec.kmin + static_cast<int>(i);
        for (int t = 0; t <= ns; ++t) {
            int idx = 2 * k + t - rec.predicted.kmin;
            if (idx >= 0 && idx < static_cast<int>(rec.predicted.coeffs.size()))
                rec.predicted.coeffs[idx] += rec.coeff[i] * prob.fb.highpass[t];
        }
    }
    rec.predicted_norm2 = norm2 + sum_b2;
    rec.predicted_energy =
        compose_energy(rec.mode, prob, rec.source_energy, raw, terms, rec.predicted);

    rec.multilevel.resize(first.multilevel.size() + n);
    std::copy(first.multilevel.begin(), first.multilevel.end(), rec.multilevel.begin());
    std::copy(rec.coeff.begin(), rec.coeff.end(), rec.multilevel.begin() + first.multilevel.size());
    return rec;
}

std::vector<double> smooth_average(std::span<const double> values, int window) {
    if (window < 3 || window % 2 == 0)
        throw ParameterError("averaging window must be odd and >= 3");
    int r = (window - 1) / 2;
    int n = static_cast<int>(values.size());
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - r);
        int hi = std::min(n - 1, i + r);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j) acc += values[j];
        out[i] = acc / (hi - lo + 1);
    }
    return out;
}

} // namespace waveritz
