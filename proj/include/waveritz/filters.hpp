#ifndef WAVERITZ_FILTERS_HPP
#define WAVERITZ_FILTERS_HPP

#include <filesystem>
#include <vector>

namespace waveritz {

/// Two-channel orthonormal filter pair of a compactly supported wavelet
/// family. The lowpass taps h satisfy sum(h) = sqrt(2) and the shift
/// orthonormality relations; the highpass is g_i = (-1)^i h_{Ns-i}.
struct FilterBank {
    int genus = 0;                ///< number of vanishing moments p
    std::vector<double> lowpass;  ///< h_0..h_{2p-1}
    std::vector<double> highpass; ///< g_0..g_{2p-1}

    /// Support endpoint N_s = 2p-1; both s and w live on [0, N_s].
    int support() const { return static_cast<int>(lowpass.size()) - 1; }
};

/// Build the Daubechies extremal-phase filter of the given genus (1..10).
/// Coefficients come from spectral factorization of the Daubechies
/// polynomial followed by a Newton polish of the defining constraint
/// system, so they are accurate to near machine precision.
FilterBank build_filter(int genus);

/// Autocorrelation sum_i i^q h_i h_{i+c}; zero when |c| > N_s.
double filter_autocorrelation(const std::vector<double>& taps, int q, int c);

// Cache file format: line 1 "dbfilter v1 genus=<p>", then N_s+1 coefficient
// lines at 17 significant digits.
void save_filter(const FilterBank& fb, const std::filesystem::path& file);
FilterBank load_filter(const std::filesystem::path& file);

/// Load the filter for `genus` from `cache_dir`, computing and caching it on
/// first use.
FilterBank cached_filter(int genus, const std::filesystem::path& cache_dir);

} // namespace waveritz

#endif
