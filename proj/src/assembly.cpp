#include "waveritz/assembly.hpp"
#include "waveritz/errors.hpp"

#include <cmath>

namespace waveritz {

double hamiltonian_entry(const ModelSystem& model, const ConnectionTable& ct, int level, int k,
                         int l) {
    int d = l - k;
    if (d < -ct.dmax || d > ct.dmax) return 0.0;
    double scale_up = std::ldexp(1.0, 2 * level);    // 4^level
    double scale_dn = std::ldexp(1.0, -2 * level);   // 4^-level
    double kin = -0.5 * scale_up * ct.lap(d);
    double kd = static_cast<double>(k);
    double delta = (d == 0) ? 1.0 : 0.0;
    double pot = model.v2 * scale_dn * (ct.tpoly(2, d) + 2.0 * kd * ct.tpoly(1, d) + kd * kd * delta);
    if (model.v1 != 0.0)
        pot += model.v1 * std::ldexp(1.0, -level) * (ct.tpoly(1, d) + kd * delta);
    pot += model.v0 * delta;
    return kin + pot;
}

HamiltonianMatrix assemble_single_level(const ModelSystem& model, const BasisLayout& layout,
                                        const ConnectionTable& ct) {
    HamiltonianMatrix h;
    h.rep = Representation::SingleLevel;
    h.layout = layout;
    int n = layout.single_dim();
    int kmin = layout.single_window.kmin;
    h.mat = Eigen::MatrixXd::Zero(n, n);
    for (int ki = 0; ki < n; ++ki)
        for (int li = std::max(0, ki - ct.dmax); li <= std::min(n - 1, ki + ct.dmax); ++li)
            h.mat(ki, li) = hamiltonian_entry(model, ct, layout.top_level, kmin + ki, kmin + li);
    // Enforce exact symmetry against rounding in the k-expanded potential terms.
    h.mat = 0.5 * (h.mat + h.mat.transpose()).eval();
    return h;
}

HamiltonianMatrix to_multilevel(const HamiltonianMatrix& h, const FilterBank& fb) {
    if (h.rep != Representation::SingleLevel)
        throw LayoutError("to_multilevel expects a single-level matrix");
    Eigen::MatrixXd t = analysis_matrix(h.layout, fb);
    HamiltonianMatrix out;
    out.rep = Representation::Multilevel;
    out.layout = h.layout;
    out.mat = t * h.mat * t.transpose();
    out.mat = 0.5 * (out.mat + out.mat.transpose()).eval();
    return out;
}

LevelVector apply_operator(const ModelSystem& model, const ConnectionTable& ct,
                           const LevelVector& v) {
    LevelVector out;
    out.level = v.level;
    out.kmin = v.kmin - ct.dmax;
    out.coeffs.assign(v.coeffs.size() + 2 * ct.dmax, 0.0);
    for (int ki = 0; ki < static_cast<int>(out.coeffs.size()); ++ki) {
        int k = out.kmin + ki;
        double acc = 0.0;
        for (int d = -ct.dmax; d <= ct.dmax; ++d) {
            double c = v.at(k + d);
            if (c != 0.0) acc += hamiltonian_entry(model, ct, v.level, k, k + d) * c;
        }
        out.coeffs[ki] = acc;
    }
    return out;
}

double operator_row(const ModelSystem& model, const FilterBank& fb, const ConnectionTable& ct,
                    const CompositeIndex& bra, const LevelVector& ket) {
    int bra_level = bra.level + (bra.type == BasisFunction::Wavelet ? 1 : 0);
    int common = std::max(bra_level, ket.level);
    LevelVector b = basis_function_expansion(fb, bra.type == BasisFunction::Wavelet, bra.level,
                                             bra.shift, common);
    LevelVector k = (ket.level == common) ? ket : prolong(ket, fb, common);
    // H k is zero outside the ket window plus one bandwidth, so out-of-range
    // bra coefficients contribute nothing.
    LevelVector hk = apply_operator(model, ct, k);
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(b.coeffs.size()); ++i)
        acc += b.coeffs[i] * hk.at(b.kmin + i);
    return acc;
}

std::pair<double, double> wavelet_diagonal_parts(const ModelSystem& model,
                                                 const ConnectionTable& ct, const FilterBank& fb,
                                                 int m, int k) {
    int ns = fb.support();
    const auto& g = fb.highpass;
    // Level-(m+1) scaling expansion w_{m,k} = sum_i g_i s_{m+1, 2k+i}.
    double kin_stencil = 0.0;
    double pot = 0.0;
    double scale_dn = std::ldexp(1.0, -2 * (m + 1));
    for (int i = 0; i <= ns; ++i)
        for (int j = 0; j <= ns; ++j) {
            int d = j - i;
            if (d < -ct.dmax || d > ct.dmax) continue;
            kin_stencil += g[i] * g[j] * ct.lap(d);
            double kk = static_cast<double>(2 * k + i);
            double delta = (d == 0) ? 1.0 : 0.0;
            double p = model.v2 * scale_dn *
                       (ct.tpoly(2, d) + 2.0 * kk * ct.tpoly(1, d) + kk * kk * delta);
            if (model.v1 != 0.0)
                p += model.v1 * std::ldexp(1.0, -(m + 1)) * (ct.tpoly(1, d) + kk * delta);
            p += model.v0 * delta;
            pot += g[i] * g[j] * p;
        }
    double kin = -0.5 * std::ldexp(1.0, 2 * (m + 1)) * kin_stencil;
    return {kin, pot};
}

} // namespace waveritz
