#ifndef WAVERITZ_PREDICTOR_HPP
#define WAVERITZ_PREDICTOR_HPP

#include "waveritz/eigensolver.hpp"
#include "waveritz/problem.hpp"

#include <span>
#include <string>
#include <vector>

namespace waveritz {

/// How the predicted energy is composed from the single-wavelet corrections.
///  - Additive: E + sum_k (E(alpha_k) - E), the independent sum of exact
///    two-by-two Ritz gains; equivalently E + sum_k alpha_k R_k.
///  - Rayleigh: full Rayleigh quotient of Psi_pred under the next-level
///    operator (variational, never below the exact ground energy).
///  - Mixed: (E + sum_k alpha_k R_k) / (1 + sum_k alpha_k^2), the source-state
///    matrix element of the predicted function over the predicted norm.
enum class PredictionMode { Additive, Rayleigh, Mixed };

enum class PredictionStage { First, Secondary };

/// Coefficient convention for the secondary stage: either apply the closed
/// form to the normalized predicted state and rescale the resulting betas
/// (Normalized), or apply it verbatim to the unnormalized state (Verbatim).
enum class BetaConvention { Normalized, Verbatim };

std::string to_string(PredictionMode m);
PredictionMode prediction_mode_from_string(const std::string& s);

/// Per-index single-wavelet optimization data at one target wavelet level,
/// the predicted wavefunction it composes, and its predicted energy.
struct PredictionRecord {
    PredictionStage stage = PredictionStage::First;
    PredictionMode mode = PredictionMode::Additive;
    int state = 0;
    int source_level = 0;         ///< level of the eigensolve this chain started from
    int target_wavelet_level = 0; ///< level of the wavelets carrying coeff
    int kmin = 0;                 ///< first candidate shift index

    std::vector<double> w;       ///< <w_k|H|w_k>
    std::vector<double> r;       ///< <w_k|H|Psi>
    std::vector<double> lambda;  ///< (E - W)/(2R); 0 where R = 0
    std::vector<double> coeff;   ///< alpha_k (first stage) or beta_k (secondary)

    double source_energy = 0.0;    ///< E of the state being refined
    double predicted_energy = 0.0;
    double source_norm2 = 1.0;     ///< squared norm of the state being refined
    double predicted_norm2 = 1.0;

    /// Predicted function as level-(target+1) scaling coefficients (exact).
    LevelVector predicted;

    /// Predicted function in the multilevel layout whose top level is
    /// target_wavelet_level + 1: the source state's blocks followed by
    /// `coeff` as the new detail block.
    std::vector<double> multilevel;
};

struct AlphaResult {
    double lambda = 0.0;
    double alpha = 0.0;
};

/// Energy-minimizing root of the single-wavelet Ritz condition
/// alpha^2 + 2 lambda alpha - 1 = 0 with lambda = (E - W)/(2R):
/// alpha = -lambda - sqrt(lambda^2+1) for R > 0,
/// alpha = -lambda + sqrt(lambda^2+1) for R < 0, and 0 for R = 0.
/// Evaluated in a cancellation-free form; for |lambda| large the value
/// approaches 1/(2 lambda).
AlphaResult alpha(double energy, double w, double r);

/// Energy of Psi + alpha w from the two-by-two Rayleigh quotient.
double single_wavelet_energy(double energy, double w, double r, double a);

/// W_k and R_k arrays for all wavelets at `wavelet_level` whose support
/// intersects the domain, against state `state` of `sol`. Both are exact
/// contractions through the level-(wavelet_level+1) operator.
struct CrossTerms {
    int kmin = 0;
    std::vector<double> w;
    std::vector<double> r;
};
CrossTerms cross_terms(const Problem& prob, const SpectralSolution& sol, int state,
                       int wavelet_level);

/// First prediction from the level-M solution: alphas for the level-M
/// wavelets and the predicted wavefunction Psi + sum alpha_k w_{M,k}.
PredictionRecord predict_level(const Problem& prob, const SpectralSolution& sol, int state,
                               PredictionMode mode);

/// Indices whose coefficient magnitude reaches `threshold` times the
/// maximum; ties at the threshold are kept. Sorted ascending.
std::vector<int> select_indices(const PredictionRecord& rec, double threshold);

/// Secondary prediction: betas for the wavelets one level above the record's
/// target, against the (first-stage) predicted wavefunction and energy.
PredictionRecord secondary_predict(const Problem& prob, const PredictionRecord& first,
                                   BetaConvention convention);

/// Centered moving average with the window shrinking at the ends; the window
/// must be odd.
std::vector<double> smooth_average(std::span<const double> values, int window);

} // namespace waveritz

#endif
