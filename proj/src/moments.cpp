#include "waveritz/moments.hpp"
#include "waveritz/errors.hpp"

#include <cmath>
#include <numbers>

namespace waveritz {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= double(n - k + j) / double(j);
    return r;
}

double ipow(int i, int e) { return e == 0 ? 1.0 : std::pow(double(i), e); }

} // namespace

MomentTable compute_moments(const FilterBank& fb, int n_max) {
    if (n_max < 0 || n_max > 12) throw ParameterError("moment order must be in 0..12");
    int ns = fb.support();
    MomentTable mt;
    mt.scaling.assign(n_max + 1, 0.0);
    mt.scaling[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (int i = 0; i <= ns; ++i)
            for (int j = 0; j < n; ++j)
                s += fb.lowpass[i] * binomial(n, j) * ipow(i, n - j) * mt.scaling[j];
        mt.scaling[n] = s * std::numbers::sqrt2 * std::ldexp(1.0, -n - 1) / (1.0 - std::ldexp(1.0, -n));
    }
    mt.wavelet.assign(n_max + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        double s = 0.0;
        for (int i = 0; i <= ns; ++i)
            for (int j = 0; j <= n; ++j)
                s += fb.highpass[i] * binomial(n, j) * ipow(i, n - j) * mt.scaling[j];
        mt.wavelet[n] = s * std::numbers::sqrt2 * std::ldexp(1.0, -n - 1);
    }
    return mt;
}

} // namespace waveritz
