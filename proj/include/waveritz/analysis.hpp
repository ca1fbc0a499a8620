#ifndef WAVERITZ_ANALYSIS_HPP
#define WAVERITZ_ANALYSIS_HPP

#include "waveritz/predictor.hpp"
#include "waveritz/problem.hpp"

#include <map>
#include <string>
#include <vector>

namespace waveritz {

/// Per-level aggregates of one prediction-ingredient quantity and the fitted
/// log2 slope over the level range.
struct ScalingFit {
    std::string quantity;
    std::vector<int> levels;
    std::vector<double> aggregate; ///< max-abs over k (min-abs for lambda, sum for weights)
    std::vector<double> at_center; ///< value at k = 0
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Unweighted least-squares fit of log2|y| against x, ignoring entries below
/// 1e-13; throws if fewer than 3 usable points remain.
void fit_log2_slope(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                    double& intercept, double& residual_rms);

/// Solves each level in [m_min, m_max] for `state` and aggregates W (total,
/// kinetic, potential parts), R, lambda, alpha and the per-level predicted
/// weight sum_k alpha_k^2.
std::vector<ScalingFit> scaling_series(const Problem& prob, int m_min, int m_max, int state);

/// Tail-weight bound 2^{-6M} / (1 - 2^{-6}) for the total weight above
/// level M.
double weight_tail_bound(int m);

/// Interleaved energy table: the exact energies, each level's eigenvalues
/// and the predictions from the level below.
struct EnergyTable {
    int n_states = 0;
    std::vector<std::string> row_labels;
    std::vector<std::vector<double>> rows;
};

EnergyTable energy_table(const Problem& prob, int m_max, int n_states, PredictionMode mode);

struct ErrorNormPoint {
    int state = 0;
    int level = 0;            ///< expansion level of the approximation
    double norm2_diff = 0.0;  ///< squared distance to the reference state
    double energy_err = 0.0;  ///< |E - exact|
    std::string source;       ///< "eig" or "pred"
};

struct ErrorNormSeries {
    std::vector<ErrorNormPoint> points;
    std::vector<double> slope_per_state;    ///< log-log fit on the eig series
    std::vector<double> residual_per_state;
};

/// Energy error against squared norm distance to the prolonged truth
/// (an eigensolve at `truth_level`), for eigensolves and predictions at
/// levels m_min..m_max. Points with norm differences below 1e-14 are
/// excluded from the fits.
ErrorNormSeries error_vs_norm(const Problem& prob, int m_min, int m_max, int n_states,
                              int truth_level, PredictionMode mode);

} // namespace waveritz

#endif
