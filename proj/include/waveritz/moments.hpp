#ifndef WAVERITZ_MOMENTS_HPP
#define WAVERITZ_MOMENTS_HPP

#include "waveritz/filters.hpp"

#include <vector>

namespace waveritz {

/// Moments of the scaling function and wavelet: M_n = int x^n s(x) dx and
/// mu_n = int x^n w(x) dx for n = 0..n_max. M_0 = 1 by normalization and the
/// first `genus` wavelet moments vanish.
struct MomentTable {
    std::vector<double> scaling;
    std::vector<double> wavelet;
};

/// Evaluate the moment recursion induced by the two-scale relation:
/// M_n (1 - 2^-n) = sqrt(2) 2^{-n-1} sum_i h_i sum_{j<n} C(n,j) i^{n-j} M_j,
/// with the wavelet moments given by the analogous closed sum over g.
MomentTable compute_moments(const FilterBank& fb, int n_max);

} // namespace waveritz

#endif
