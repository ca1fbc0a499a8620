#ifndef WAVERITZ_CONNECTION_HPP
#define WAVERITZ_CONNECTION_HPP

#include "waveritz/filters.hpp"

#include <filesystem>
#include <vector>

namespace waveritz {

/// Exact Galerkin integrals between shifted scaling functions:
///   Lambda_d = int s(x) s''(x-d) dx,
///   T_n(d)   = int s(x) x^n s(x-d) dx   for n = 0..2,
/// on d = -(N_s-1)..(N_s-1). Both follow from the refinement equation:
/// Lambda is the suitably normalized eigenvector of the filter
/// autocorrelation transfer matrix and the T_n solve the analogous linear
/// systems with polynomial-exactness closing the recursion.
struct ConnectionTable {
    int genus = 0;
    int dmax = 0; ///< N_s - 1

    double lap(int d) const { return fetch(lambda_, d); }
    double tpoly(int n, int d) const { return n == 0 ? (d == 0 ? 1.0 : 0.0)
                                                     : fetch(n == 1 ? t1_ : t2_, d); }

    std::vector<double> lambda_; ///< index d + dmax
    std::vector<double> t1_;
    std::vector<double> t2_;

private:
    double fetch(const std::vector<double>& v, int d) const {
        int i = d + dmax;
        return (i >= 0 && i < static_cast<int>(v.size())) ? v[i] : 0.0;
    }
};

/// Requires genus >= 3 so that the second-derivative pairing exists.
ConnectionTable connection_table(const FilterBank& fb);

// Cache file format: "conntab v1 genus=<p>" then lines "L <d> <value>" and
// "T <n> <d> <value>" at 17 significant digits.
void save_connection_table(const ConnectionTable& ct, const std::filesystem::path& file);
ConnectionTable load_connection_table(const std::filesystem::path& file);
ConnectionTable cached_connection_table(const FilterBank& fb, const std::filesystem::path& cache_dir);

} // namespace waveritz

#endif
