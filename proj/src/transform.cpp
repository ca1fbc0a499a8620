#include "waveritz/transform.hpp"
#include "waveritz/errors.hpp"

#include <string>

namespace waveritz {

namespace {

// One analysis step of the coefficients in `cur` onto the window `out_win`
// at the next coarser level, with taps h or g.
std::vector<double> analysis_step(const LevelVector& cur, const IndexWindow& out_win,
                                  const std::vector<double>& taps) {
    std::vector<double> out(out_win.size(), 0.0);
    int ns = static_cast<int>(taps.size()) - 1;
    for (int k = out_win.kmin; k <= out_win.kmax; ++k) {
        double acc = 0.0;
        for (int i = 0; i <= ns; ++i) acc += taps[i] * cur.at(2 * k + i);
        out[k - out_win.kmin] = acc;
    }
    return out;
}

} // namespace

std::vector<double> pyramid_analysis(std::span<const double> single, const BasisLayout& layout,
                                     const FilterBank& fb) {
    if (static_cast<int>(single.size()) != layout.single_dim())
        throw LayoutError("analysis input has dimension " + std::to_string(single.size()) +
                          ", layout expects " + std::to_string(layout.single_dim()));
    std::vector<double> multi(layout.multilevel_dim(), 0.0);
    LevelVector cur{layout.top_level, layout.single_window.kmin,
                    std::vector<double>(single.begin(), single.end())};
    for (int m = layout.top_level - 1; m >= 0; --m) {
        const IndexWindow& win = layout.wavelet_windows[m];
        std::vector<double> detail = analysis_step(cur, win, fb.highpass);
        std::copy(detail.begin(), detail.end(), multi.begin() + layout.wavelet_offset(m));
        cur = LevelVector{m, win.kmin, analysis_step(cur, win, fb.lowpass)};
    }
    std::copy(cur.coeffs.begin(), cur.coeffs.end(), multi.begin() + layout.scaling_offset());
    return multi;
}

std::vector<double> pyramid_synthesis(std::span<const double> multi, const BasisLayout& layout,
                                      const FilterBank& fb) {
    if (static_cast<int>(multi.size()) != layout.multilevel_dim())
        throw LayoutError("synthesis input has dimension " + std::to_string(multi.size()) +
                          ", layout expects " + std::to_string(layout.multilevel_dim()));
    int ns = fb.support();
    LevelVector cur{0, layout.scaling_window.kmin,
                    {multi.begin(), multi.begin() + layout.scaling_window.size()}};
    for (int m = 0; m < layout.top_level; ++m) {
        const IndexWindow& win = layout.wavelet_windows[m];
        const IndexWindow& next = (m + 1 < layout.top_level) ? layout.wavelet_windows[m + 1]
                                                             : layout.single_window;
        std::vector<double> up(next.size(), 0.0);
        auto detail = multi.subspan(layout.wavelet_offset(m), win.size());
        for (int k = win.kmin; k <= win.kmax; ++k) {
            double cs = cur.at(k);
            double cd = detail[k - win.kmin];
            for (int i = 0; i <= ns; ++i) {
                int idx = 2 * k + i;
                if (next.contains(idx))
                    up[idx - next.kmin] += fb.lowpass[i] * cs + fb.highpass[i] * cd;
            }
        }
        cur = LevelVector{m + 1, next.kmin, std::move(up)};
    }
    return cur.coeffs;
}

std::vector<double> multilevel_transform(std::span<const double> v, const BasisLayout& layout,
                                         const FilterBank& fb, TransformDirection dir) {
    return dir == TransformDirection::Analysis ? pyramid_analysis(v, layout, fb)
                                               : pyramid_synthesis(v, layout, fb);
}

Eigen::MatrixXd analysis_matrix(const BasisLayout& layout, const FilterBank& fb) {
    int n = layout.single_dim();
    Eigen::MatrixXd t(layout.multilevel_dim(), n);
    std::vector<double> e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        std::vector<double> col = pyramid_analysis(e, layout, fb);
        for (int i = 0; i < static_cast<int>(col.size()); ++i) t(i, j) = col[i];
        e[j] = 0.0;
    }
    return t;
}

LevelVector prolong(const LevelVector& v, const FilterBank& fb, int target_level) {
    if (target_level < v.level)
        throw ParameterError("prolong target level below source level");
    int ns = fb.support();
    LevelVector cur = v;
    while (cur.level < target_level) {
        LevelVector next;
        next.level = cur.level + 1;
        next.kmin = 2 * cur.kmin;
        next.coeffs.assign(2 * (cur.kmax() - cur.kmin) + ns + 1, 0.0);
        for (int ki = 0; ki < static_cast<int>(cur.coeffs.size()); ++ki) {
            double c = cur.coeffs[ki];
            if (c == 0.0) continue;
            int base = 2 * (cur.kmin + ki) - next.kmin;
            for (int i = 0; i <= ns; ++i) next.coeffs[base + i] += fb.lowpass[i] * c;
        }
        cur = std::move(next);
    }
    return cur;
}

LevelVector basis_function_expansion(const FilterBank& fb, bool wavelet, int level, int shift,
                                     int target_level) {
    LevelVector v;
    if (wavelet) {
        if (target_level < level + 1)
            throw ParameterError("wavelet expansion needs target level above its own");
        v.level = level + 1;
        v.kmin = 2 * shift;
        v.coeffs.assign(fb.highpass.begin(), fb.highpass.end());
    } else {
        v.level = level;
        v.kmin = shift;
        v.coeffs = {1.0};
    }
    return prolong(v, fb, target_level);
}

} // namespace waveritz
