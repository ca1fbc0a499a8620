#include "waveritz/oracle.hpp"
#include "waveritz/errors.hpp"

#include <cmath>
#include <numbers>

namespace waveritz {

namespace {

double hermite(int n, double x) {
    if (n == 0) return 1.0;
    double hm = 1.0, h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        double next = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = next;
    }
    return h;
}

double trapezoid(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

void check_common_grid(const GridFunction& a, const GridFunction& b) {
    if (a.values.size() != b.values.size() || a.dx != b.dx ||
        std::abs(a.x0 - b.x0) > 1e-12 * std::max(1.0, std::abs(a.x0)))
        throw ParameterError("quadrature grid mismatch");
}

// Embed two aligned dyadic grid functions on their common covering grid.
std::pair<GridFunction, GridFunction> common_grid(const GridFunction& a, const GridFunction& b) {
    if (a.dx != b.dx) throw ParameterError("quadrature grid mismatch");
    double x0 = std::min(a.x0, b.x0);
    double xend = std::max(a.x0 + (a.values.size() - 1) * a.dx,
                           b.x0 + (b.values.size() - 1) * b.dx);
    size_t n = static_cast<size_t>(std::llround((xend - x0) / a.dx)) + 1;
    auto embed = [&](const GridFunction& f) {
        GridFunction out{x0, f.dx, std::vector<double>(n, 0.0)};
        size_t off = static_cast<size_t>(std::llround((f.x0 - x0) / f.dx));
        for (size_t i = 0; i < f.values.size(); ++i) out.values[off + i] = f.values[i];
        return out;
    };
    return {embed(a), embed(b)};
}

// Kinetic trapezoid value at one depth.
double kinetic_quad(const GridFunction& bra, const GridFunction& ket) {
    size_t n = ket.values.size();
    std::vector<double> f(n, 0.0);
    double inv_h2 = 1.0 / (ket.dx * ket.dx);
    for (size_t i = 0; i < n; ++i) {
        double left = i > 0 ? ket.values[i - 1] : 0.0;
        double right = i + 1 < n ? ket.values[i + 1] : 0.0;
        f[i] = bra.values[i] * (right - 2.0 * ket.values[i] + left) * inv_h2;
    }
    return -0.5 * trapezoid(f, ket.dx);
}

// Slice of f covering [x0, x1] plus one sample of margin on each side for the
// finite-difference stencil; out-of-range samples are zero.
GridFunction restrict_grid(const GridFunction& f, double x0, double x1) {
    long long lo = static_cast<long long>(std::floor((x0 - f.x0) / f.dx)) - 1;
    long long hi = static_cast<long long>(std::ceil((x1 - f.x0) / f.dx)) + 1;
    GridFunction out;
    out.dx = f.dx;
    out.x0 = f.x0 + lo * f.dx;
    out.values.assign(hi - lo + 1, 0.0);
    for (long long i = std::max(lo, 0LL);
         i <= std::min(hi, static_cast<long long>(f.values.size()) - 1); ++i)
        out.values[i - lo] = f.values[i];
    return out;
}

// Aitken extrapolation of a sequence with unknown algebraic convergence rate;
// v must hold values at three successive refinement depths.
double aitken(double v0, double v1, double v2) {
    double d1 = v1 - v0, d2 = v2 - v1;
    if (std::abs(d2) < 1e-300 || std::abs(d1) <= std::abs(d2)) return v2;
    double ratio = d1 / d2;
    return v2 + d2 / (ratio - 1.0);
}

} // namespace

double ExactState::value(double x) const {
    double y = std::sqrt(omega) * x;
    double log_norm = 0.25 * std::log(omega / std::numbers::pi);
    double fact = 1.0;
    for (int k = 1; k <= index; ++k) fact *= k;
    double norm = std::exp(log_norm) / std::sqrt(std::ldexp(fact, index));
    return norm * hermite(index, y) * std::exp(-0.5 * y * y);
}

ExactState exact_state(int index, double omega) {
    if (index < 0 || index > 10) throw ParameterError("state index must be in 0..10");
    if (omega <= 0) throw ParameterError("omega must be positive");
    return ExactState{index, omega, (index + 0.5) * omega};
}

double quad_matrix_element(const GridFunction& bra, const GridFunction& ket, OperatorKind op,
                           const ModelSystem& model) {
    check_common_grid(bra, ket);
    size_t n = ket.values.size();
    switch (op) {
        case OperatorKind::Overlap: {
            std::vector<double> f(n);
            for (size_t i = 0; i < n; ++i) f[i] = bra.values[i] * ket.values[i];
            return trapezoid(f, ket.dx);
        }
        case OperatorKind::Potential: {
            std::vector<double> f(n);
            for (size_t i = 0; i < n; ++i) {
                double x = ket.x0 + i * ket.dx;
                f[i] = bra.values[i] * model.potential(x) * ket.values[i];
            }
            return trapezoid(f, ket.dx);
        }
        case OperatorKind::Kinetic: return kinetic_quad(bra, ket);
    }
    return 0.0;
}

GridFunction basis_grid_function(const FilterBank& fb, BasisFunction which, int level, int shift,
                                 int depth) {
    int j = depth - level;
    if (j < 1) throw ParameterError("grid depth must exceed the basis level");
    DyadicSamples ds = cascade_evaluate(fb, which, j);
    GridFunction out;
    out.dx = std::ldexp(1.0, -depth);
    out.x0 = std::ldexp(static_cast<double>(shift), -level);
    double amp = std::sqrt(std::ldexp(1.0, level));
    out.values.resize(ds.values.size());
    for (size_t i = 0; i < ds.values.size(); ++i) out.values[i] = amp * ds.values[i];
    return out;
}

GridFunction level_vector_grid_function(const LevelVector& v, const FilterBank& fb, int depth) {
    int j = depth - v.level;
    if (j < 1) throw ParameterError("grid depth must exceed the vector level");
    DyadicSamples ds = cascade_evaluate(fb, BasisFunction::Scaling, j);
    int ns = fb.support();
    int pts = 1 << j;
    GridFunction out;
    out.dx = std::ldexp(1.0, -depth);
    out.x0 = std::ldexp(static_cast<double>(v.kmin), -v.level);
    out.values.assign(static_cast<size_t>(v.kmax() - v.kmin + ns) * pts + 1, 0.0);
    double amp = std::sqrt(std::ldexp(1.0, v.level));
    for (int ki = 0; ki < static_cast<int>(v.coeffs.size()); ++ki) {
        double c = v.coeffs[ki];
        if (c == 0.0) continue;
        size_t base = static_cast<size_t>(ki) * pts;
        for (size_t i = 0; i < ds.values.size(); ++i) out.values[base + i] += amp * c * ds.values[i];
    }
    return out;
}

double quad_basis_matrix_element(const Problem& prob, BasisFunction bra_type, int bra_level,
                                 int bra_shift, BasisFunction ket_type, int ket_level,
                                 int ket_shift, int depth) {
    // `depth` is the cascade depth per basis function; the absolute grid is
    // max(level) + depth. The kinetic parts of level-m pairs scale as 4^m,
    // so the extrapolation triple runs several subdivisions deeper (the
    // refinement relation makes the deeper samples exact).
    int base = std::max(bra_level, ket_level);
    double pot = 0.0, kin[3] = {0.0, 0.0, 0.0};
    for (int step = 0; step < 3; ++step) {
        int d = base + depth + 4 + step;
        auto [bra, ket] = common_grid(basis_grid_function(prob.fb, bra_type, bra_level, bra_shift, d),
                                      basis_grid_function(prob.fb, ket_type, ket_level, ket_shift, d));
        kin[step] = kinetic_quad(bra, ket);
        if (step == 0) pot = quad_matrix_element(bra, ket, OperatorKind::Potential, prob.model);
    }
    return aitken(kin[0], kin[1], kin[2]) + pot;
}

double quad_row_matrix_element(const Problem& prob, BasisFunction bra_type, int bra_level,
                               int bra_shift, const LevelVector& ket, int depth) {
    int base = std::max(bra_level, ket.level);
    double bx0 = std::ldexp(static_cast<double>(bra_shift), -bra_level);
    double bx1 = bx0 + std::ldexp(static_cast<double>(prob.fb.support()), -bra_level);
    double pot = 0.0, kin[3] = {0.0, 0.0, 0.0};
    for (int step = 0; step < 3; ++step) {
        int d = base + depth + step;
        GridFunction bra = basis_grid_function(prob.fb, bra_type, bra_level, bra_shift, d);
        GridFunction kf =
            restrict_grid(level_vector_grid_function(ket, prob.fb, d), bx0, bx1);
        auto [b2, k2] = common_grid(bra, kf);
        kin[step] = kinetic_quad(b2, k2);
        if (step == 0) pot = quad_matrix_element(b2, k2, OperatorKind::Potential, prob.model);
    }
    return aitken(kin[0], kin[1], kin[2]) + pot;
}

ProjectionResult project_exact(const ExactState& state, const BasisLayout& layout,
                               const FilterBank& fb, int fine_margin, int quad_depth) {
    if (quad_depth < 8) throw ParameterError("projection quadrature depth must be >= 8");
    int ns = fb.support();
    int fine = std::max(layout.top_level + fine_margin, 8);
    IndexWindow fwin = level_window(layout.half_width, fine, ns);

    DyadicSamples sc = cascade_evaluate(fb, BasisFunction::Scaling, quad_depth);
    double hq = sc.spacing();
    double lscale = std::ldexp(1.0, -fine);
    double amp = std::sqrt(lscale) * hq;

    // Fine scaling coefficients c_{fine,k} by trapezoid against the cascade
    // samples (the end samples vanish for genus >= 2).
    LevelVector cur;
    cur.level = fine;
    cur.kmin = fwin.kmin;
    cur.coeffs.assign(fwin.size(), 0.0);
    for (int ki = 0; ki < fwin.size(); ++ki) {
        int k = fwin.kmin + ki;
        double acc = 0.0;
        for (size_t j = 1; j + 1 < sc.values.size(); ++j)
            acc += sc.values[j] * state.value(lscale * (j * hq + k));
        acc += 0.5 * (sc.values.front() * state.value(lscale * k) +
                      sc.values.back() * state.value(lscale * (ns + k)));
        cur.coeffs[ki] = amp * acc;
    }

    ProjectionResult res;

    // Residual of the fine projection, evaluated on a coarse subgrid.
    {
        GridFunction recon = level_vector_grid_function(cur, fb, fine + 4);
        double worst = 0.0;
        for (size_t i = 0; i < recon.values.size(); ++i) {
            double x = recon.x0 + i * recon.dx;
            worst = std::max(worst, std::abs(recon.values[i] - state.value(x)));
        }
        res.fine_residual = worst;
        res.precision_warning = worst > 1e-6;
    }

    // Analyze down to the layout, accumulating the detail weight of the
    // levels above the layout's top as dropped tail.
    auto step_down = [&](const LevelVector& v, const IndexWindow& win, const std::vector<double>& taps) {
        std::vector<double> out(win.size(), 0.0);
        for (int k = win.kmin; k <= win.kmax; ++k) {
            double acc = 0.0;
            for (int i = 0; i <= ns; ++i) acc += taps[i] * v.at(2 * k + i);
            out[k - win.kmin] = acc;
        }
        return out;
    };
    for (int m = fine - 1; m >= layout.top_level; --m) {
        IndexWindow win = level_window(layout.half_width, m, ns);
        std::vector<double> detail = step_down(cur, win, fb.highpass);
        for (double d : detail) res.dropped_tail_weight += d * d;
        cur = LevelVector{m, win.kmin, step_down(cur, win, fb.lowpass)};
    }
    res.multilevel = pyramid_analysis(cur.coeffs, layout, fb);
    return res;
}

std::vector<double> exact_wavelet_coefficients(const ExactState& state, double half_width,
                                               const FilterBank& fb, int wavelet_level) {
    BasisLayout layout = make_layout(wavelet_level + 1, half_width, fb.support());
    ProjectionResult pr = project_exact(state, layout, fb);
    const IndexWindow& win = layout.wavelet_windows.back();
    std::vector<double> out(win.size());
    std::copy(pr.multilevel.begin() + layout.wavelet_offset(wavelet_level),
              pr.multilevel.begin() + layout.wavelet_offset(wavelet_level) + win.size(), out.begin());
    return out;
}

} // namespace waveritz
