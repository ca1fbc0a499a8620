#ifndef WAVERITZ_CASCADE_HPP
#define WAVERITZ_CASCADE_HPP

#include "waveritz/filters.hpp"

#include <cmath>
#include <vector>

namespace waveritz {

enum class BasisFunction { Scaling, Wavelet };

/// Pointwise samples of a basis function on the dyadic grid of spacing
/// 2^-level over its support [origin, origin + width].
struct DyadicSamples {
    int level = 0;
    int origin = 0;
    std::vector<double> values; ///< width * 2^level + 1 entries

    double spacing() const { return std::ldexp(1.0, -level); }
    double x_at(size_t j) const { return origin + static_cast<double>(j) * spacing(); }
};

/// Evaluate the scaling function or wavelet on the dyadic grid of depth J.
/// Integer-point values come from the eigenvector of the refinement matrix
/// (eigenvalue 1, partition-of-unity normalization); finer points follow by
/// dyadic subdivision through the two-scale relation.
DyadicSamples cascade_evaluate(const FilterBank& fb, BasisFunction which, int depth);

} // namespace waveritz

#endif
