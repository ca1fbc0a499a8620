#ifndef WAVERITZ_TRANSFORM_HPP
#define WAVERITZ_TRANSFORM_HPP

#include "waveritz/filters.hpp"
#include "waveritz/layout.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace waveritz {

/// Scaling coefficients at one resolution level on a contiguous shift range.
/// Used for exact operator work where index windows must be allowed to grow.
struct LevelVector {
    int level = 0;
    int kmin = 0;
    std::vector<double> coeffs;

    int kmax() const { return kmin + static_cast<int>(coeffs.size()) - 1; }
    double at(int k) const {
        int i = k - kmin;
        return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[i] : 0.0;
    }
};

enum class TransformDirection { Analysis, Synthesis };

/// Filter-bank pyramid between the level-M scaling representation and the
/// multilevel representation of `layout`. Analysis is a norm-preserving
/// injection (the layout windows are closed under one analysis step);
/// synthesis is its adjoint, so synthesis(analysis(v)) = v exactly.
std::vector<double> multilevel_transform(std::span<const double> v, const BasisLayout& layout,
                                         const FilterBank& fb, TransformDirection dir);

std::vector<double> pyramid_analysis(std::span<const double> single, const BasisLayout& layout,
                                     const FilterBank& fb);
std::vector<double> pyramid_synthesis(std::span<const double> multi, const BasisLayout& layout,
                                      const FilterBank& fb);

/// Dense matrix T of pyramid_analysis (multilevel_dim x single_dim);
/// T^T T = I.
Eigen::MatrixXd analysis_matrix(const BasisLayout& layout, const FilterBank& fb);

/// Exact refinement of a level vector to a finer single level; the shift
/// window grows by N_s per step.
LevelVector prolong(const LevelVector& v, const FilterBank& fb, int target_level);

/// Level-M scaling expansion of one multilevel basis function (scaling
/// function at level 0 or wavelet at level m < M).
LevelVector basis_function_expansion(const FilterBank& fb, bool wavelet, int level, int shift,
                                     int target_level);

} // namespace waveritz

#endif
