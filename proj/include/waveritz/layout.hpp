#ifndef WAVERITZ_LAYOUT_HPP
#define WAVERITZ_LAYOUT_HPP

#include <vector>

namespace waveritz {

/// Closed integer interval of shift indices.
struct IndexWindow {
    int kmin = 0;
    int kmax = -1;
    int size() const { return kmax - kmin + 1; }
    bool contains(int k) const { return k >= kmin && k <= kmax; }
};

/// Shift window at level m for basis functions whose support [2^-m k,
/// 2^-m (k+N_s)] intersects [-a, a]: k in [ceil(-a 2^m) - N_s, floor(a 2^m)].
IndexWindow level_window(double half_width, int m, int support);

/// Truncated index sets of the multilevel basis over [-a, a]: the level-0
/// scaling window plus one wavelet window per level m = 0..M-1, flattened
/// level-major, together with the level-M scaling window of the equivalent
/// single-level basis. The windows are closed under one analysis step, so
/// the pyramid transform between the two representations is lossless.
struct BasisLayout {
    int top_level = 0;    ///< M
    double half_width = 0;
    int support = 0;      ///< N_s of the generating filter

    IndexWindow scaling_window;               ///< level-0 scaling block
    std::vector<IndexWindow> wavelet_windows; ///< detail blocks m = 0..M-1
    IndexWindow single_window;                ///< level-M scaling window

    int single_dim() const { return single_window.size(); }
    int multilevel_dim() const;

    /// Offset of a block in the flattened multilevel ordering.
    int scaling_offset() const { return 0; }
    int wavelet_offset(int m) const;
};

BasisLayout make_layout(int top_level, double half_width, int support);

} // namespace waveritz

#endif
