#include "waveritz/analysis.hpp"
#include "waveritz/errors.hpp"

#include <cmath>
#include <limits>

namespace waveritz {

void fit_log2_slope(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                    double& intercept, double& residual_rms) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < x.size(); ++i) {
        if (std::abs(y[i]) > 1e-13) {
            xs.push_back(x[i]);
            ys.push_back(std::log2(std::abs(y[i])));
        }
    }
    if (xs.size() < 3) throw ParameterError("slope fit needs at least 3 usable levels");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (slope * xs[i] + intercept);
        ss += r * r;
    }
    residual_rms = std::sqrt(ss / n);
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void finish_fit(ScalingFit& f) {
    std::vector<double> xs(f.levels.begin(), f.levels.end());
    try {
        fit_log2_slope(xs, f.aggregate, f.slope, f.intercept, f.residual_rms);
    } catch (const ParameterError&) {
        f.slope = f.intercept = f.residual_rms = std::nan("");
    }
}

} // namespace

std::vector<ScalingFit> scaling_series(const Problem& prob, int m_min, int m_max, int state) {
    if (m_max - m_min + 1 < 3) throw ParameterError("scaling series needs at least 3 levels");
    const char* names[] = {"W", "Wkin", "Wpot", "R", "lambda", "alpha", "alpha_weight"};
    std::vector<ScalingFit> fits(7);
    for (int q = 0; q < 7; ++q) fits[q].quantity = names[q];

    for (int m = m_min; m <= m_max; ++m) {
        SpectralSolution sol = solve_level(prob, m, state + 1);
        PredictionRecord rec = predict_level(prob, sol, state, PredictionMode::Additive);
        int n = static_cast<int>(rec.coeff.size());

        std::vector<double> wkin(n), wpot(n);
        for (int i = 0; i < n; ++i) {
            auto [kin, pot] =
                wavelet_diagonal_parts(prob.model, prob.ct, prob.fb, m, rec.kmin + i);
            wkin[i] = kin;
            wpot[i] = pot;
        }

        double lam_min = std::numeric_limits<double>::infinity();
        double alpha_max = 0.0, weight = 0.0;
        for (int i = 0; i < n; ++i) {
            if (rec.r[i] != 0.0) lam_min = std::min(lam_min, std::abs(rec.lambda[i]));
            alpha_max = std::max(alpha_max, std::abs(rec.coeff[i]));
            weight += rec.coeff[i] * rec.coeff[i];
        }
        int c = -rec.kmin; // index of k = 0
        double vals_agg[] = {max_abs(rec.w), max_abs(wkin), max_abs(wpot),
                             max_abs(rec.r), lam_min, alpha_max, weight};
        double vals_ctr[] = {rec.w[c], wkin[c], wpot[c], rec.r[c], rec.lambda[c], rec.coeff[c],
                             rec.coeff[c] * rec.coeff[c]};
        for (int q = 0; q < 7; ++q) {
            fits[q].levels.push_back(m);
            fits[q].aggregate.push_back(vals_agg[q]);
            fits[q].at_center.push_back(vals_ctr[q]);
        }
    }
    for (auto& f : fits) finish_fit(f);
    return fits;
}

double weight_tail_bound(int m) {
    if (m < 0) throw ParameterError("level must be >= 0");
    return std::ldexp(1.0, -6 * m) / (1.0 - std::ldexp(1.0, -6));
}

EnergyTable energy_table(const Problem& prob, int m_max, int n_states, PredictionMode mode) {
    if (m_max > 8) throw ParameterError("table level capped at 8");
    EnergyTable t;
    t.n_states = n_states;

    std::vector<double> exact(n_states);
    for (int i = 0; i < n_states; ++i) exact[i] = (i + 0.5) * prob.model.omega;
    t.row_labels.push_back("exact");
    t.rows.push_back(exact);

    SpectralSolution prev;
    std::vector<int> order(n_states);
    for (int i = 0; i < n_states; ++i) order[i] = i;

    for (int m = 0; m <= m_max; ++m) {
        SpectralSolution sol = solve_level(prob, m, n_states);
        std::vector<int> cur_order = order;
        if (m > 0) {
            std::vector<int> match = track_states(prev, sol, prob.fb);
            for (int i = 0; i < n_states; ++i) cur_order[i] = match[order[i]];

            std::vector<double> pred(n_states);
            for (int i = 0; i < n_states; ++i) {
                PredictionRecord rec = predict_level(prob, prev, order[i], mode);
                pred[i] = rec.predicted_energy;
            }
            t.row_labels.push_back("Epred[" + std::to_string(m) + "]");
            t.rows.push_back(pred);
        }
        std::vector<double> eig(n_states);
        for (int i = 0; i < n_states; ++i) eig[i] = sol.energy(cur_order[i]);
        t.row_labels.push_back("E[" + std::to_string(m) + "]");
        t.rows.push_back(eig);
        prev = std::move(sol);
        order = cur_order;
    }
    return t;
}

ErrorNormSeries error_vs_norm(const Problem& prob, int m_min, int m_max, int n_states,
                              int truth_level, PredictionMode mode) {
    if (prob.model.kind != ModelSystem::Kind::HarmonicOscillator)
        throw ParameterError("error_vs_norm requires the harmonic oscillator model");
    if (truth_level <= m_max) throw ParameterError("truth level must exceed the range");

    SpectralSolution truth = solve_level(prob, truth_level, n_states);

    ErrorNormSeries out;
    auto add_point = [&](int state, int level, const LevelVector& v, double energy,
                         const char* tag) {
        LevelVector up = prolong(v, prob.fb, truth_level);
        double dot = 0.0;
        for (int r = 0; r < truth.vectors_single.rows(); ++r)
            dot += truth.vectors_single(r, state) * up.at(truth.layout.single_window.kmin + r);
        double sign = dot >= 0 ? 1.0 : -1.0;
        // Squared distance over the union of index ranges, missing entries
        // treated as zero.
        double diff2 = 0.0;
        int tmin = truth.layout.single_window.kmin;
        int tmax = tmin + static_cast<int>(truth.vectors_single.rows()) - 1;
        for (int k = std::min(up.kmin, tmin); k <= std::max(up.kmax(), tmax); ++k) {
            double tv = (k >= tmin && k <= tmax)
                            ? truth.vectors_single(k - tmin, state)
                            : 0.0;
            double d = sign * up.at(k) - tv;
            diff2 += d * d;
        }
        double exact = (state + 0.5) * prob.model.omega;
        if (diff2 < 1e-14) return;
        out.points.push_back({state, level, diff2, std::abs(energy - exact), tag});
    };

    for (int m = m_min; m <= m_max; ++m) {
        SpectralSolution sol = solve_level(prob, m, n_states);
        for (int s = 0; s < n_states; ++s) {
            add_point(s, m, sol.state_vector(s), sol.energy(s), "eig");
            PredictionRecord rec = predict_level(prob, sol, s, mode);
            LevelVector pv = rec.predicted;
            double inv = 1.0 / std::sqrt(rec.predicted_norm2);
            for (auto& c : pv.coeffs) c *= inv;
            add_point(s, m + 1, pv, rec.predicted_energy, "pred");
        }
    }

    out.slope_per_state.assign(n_states, std::nan(""));
    out.residual_per_state.assign(n_states, std::nan(""));
    for (int s = 0; s < n_states; ++s) {
        std::vector<double> xs, ys;
        for (const auto& p : out.points)
            if (p.state == s && p.source == "eig") {
                xs.push_back(std::log2(p.norm2_diff));
                ys.push_back(p.energy_err);
            }
        try {
            double slope, intercept, rms;
            fit_log2_slope(xs, ys, slope, intercept, rms);
            out.slope_per_state[s] = slope;
            out.residual_per_state[s] = rms;
        } catch (const ParameterError&) {
        }
    }
    return out;
}

} // namespace waveritz
