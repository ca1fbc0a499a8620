#include "waveritz/layout.hpp"
#include "waveritz/errors.hpp"

#include <cmath>
#include <string>

namespace waveritz {

IndexWindow level_window(double half_width, int m, int support) {
    double scale = std::ldexp(1.0, m);
    IndexWindow w;
    w.kmin = static_cast<int>(std::ceil(-half_width * scale)) - support;
    w.kmax = static_cast<int>(std::floor(half_width * scale));
    return w;
}

int BasisLayout::multilevel_dim() const {
    int n = scaling_window.size();
    for (const auto& w : wavelet_windows) n += w.size();
    return n;
}

int BasisLayout::wavelet_offset(int m) const {
    int off = scaling_window.size();
    for (int j = 0; j < m; ++j) off += wavelet_windows[j].size();
    return off;
}

BasisLayout make_layout(int top_level, double half_width, int support) {
    if (top_level < 0) throw LayoutError("top level must be >= 0");
    if (half_width <= 0) throw LayoutError("half width must be positive");
    BasisLayout layout;
    layout.top_level = top_level;
    layout.half_width = half_width;
    layout.support = support;
    layout.scaling_window = level_window(half_width, 0, support);
    for (int m = 0; m < top_level; ++m)
        layout.wavelet_windows.push_back(level_window(half_width, m, support));
    layout.single_window = level_window(half_width, top_level, support);
    if (layout.scaling_window.size() <= 0 || layout.single_window.size() <= 0)
        throw LayoutError("empty index window for half_width=" + std::to_string(half_width));
    for (const auto& w : layout.wavelet_windows)
        if (w.size() <= 0) throw LayoutError("empty wavelet window");
    return layout;
}

} // namespace waveritz
