#ifndef WAVERITZ_ASSEMBLY_HPP
#define WAVERITZ_ASSEMBLY_HPP

#include "waveritz/cascade.hpp"
#include "waveritz/connection.hpp"
#include "waveritz/layout.hpp"
#include "waveritz/model.hpp"
#include "waveritz/transform.hpp"

#include <Eigen/Dense>

#include <utility>

namespace waveritz {

enum class Representation { SingleLevel, Multilevel };

struct HamiltonianMatrix {
    Representation rep = Representation::SingleLevel;
    BasisLayout layout;
    Eigen::MatrixXd mat;

    int dim() const { return static_cast<int>(mat.rows()); }
};

/// (type, level, shift) triple addressing one basis function.
struct CompositeIndex {
    BasisFunction type = BasisFunction::Scaling;
    int level = 0;
    int shift = 0;
};

/// Exact level-`level` matrix element <s_{level,k} | H | s_{level,l}> from
/// the connection tables, via the substitution x = 2^-level (y + k):
///   -1/2 4^level Lambda_{l-k}
///   + v2 4^-level (T_2 + 2k T_1 + k^2 T_0)(l-k)
///   + v1 2^-level (T_1 + k T_0)(l-k) + v0 T_0(l-k).
double hamiltonian_entry(const ModelSystem& model, const ConnectionTable& ct, int level, int k,
                         int l);

/// Dense symmetric level-M Hamiltonian on the layout's single-level window.
HamiltonianMatrix assemble_single_level(const ModelSystem& model, const BasisLayout& layout,
                                        const ConnectionTable& ct);

/// Orthogonal change of representation H' = T H T^T with T the pyramid
/// analysis. T is a norm-preserving injection, so H' carries the single-level
/// spectrum plus an exact null space of dimension multilevel_dim - single_dim.
HamiltonianMatrix to_multilevel(const HamiltonianMatrix& h, const FilterBank& fb);

/// Exact operator application y = H^(level) v on the whole line; the output
/// window grows by the connection-table bandwidth.
LevelVector apply_operator(const ModelSystem& model, const ConnectionTable& ct,
                           const LevelVector& v);

/// <chi_bra | H | Psi> for an arbitrary composite-index bra and a ket given
/// as level-`ket.level` scaling coefficients. Both sides are refined to a
/// common level, where the contraction is exact; a bra with support disjoint
/// from the ket's window yields exactly 0.
double operator_row(const ModelSystem& model, const FilterBank& fb, const ConnectionTable& ct,
                    const CompositeIndex& bra, const LevelVector& ket);

/// Kinetic and potential parts of the wavelet diagonal <w_{m,k}|H|w_{m,k}>.
/// The kinetic part is k-independent and scales exactly as 4^m.
std::pair<double, double> wavelet_diagonal_parts(const ModelSystem& model,
                                                 const ConnectionTable& ct, const FilterBank& fb,
                                                 int m, int k);

} // namespace waveritz

#endif
