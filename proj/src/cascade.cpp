#include "waveritz/cascade.hpp"
#include "waveritz/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace waveritz {

namespace {

// s(k) at interior integers k = 1..N_s-1 from the eigenvalue-1 eigenvector of
// A[k][m] = sqrt(2) h_{2k-m}, normalized so the values sum to 1.
std::vector<double> integer_values(const FilterBank& fb) {
    int ns = fb.support();
    std::vector<double> v(ns + 1, 0.0);
    if (ns == 1) { // Haar: indicator of [0,1)
        v[0] = 1.0;
        return v;
    }
    int n = ns - 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < ns; ++k)
        for (int m = 1; m < ns; ++m) {
            int i = 2 * k - m;
            if (i >= 0 && i <= ns) a(k - 1, m - 1) = std::numbers::sqrt2 * fb.lowpass[i];
        }
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    int found = -1;
    int multiplicity = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(es.eigenvalues()[i] - 1.0) < 1e-8) {
            ++multiplicity;
            found = i;
        }
    }
    if (multiplicity != 1)
        throw DegeneracyError("refinement operator lacks a simple eigenvalue 1");
    Eigen::VectorXcd vec = es.eigenvectors().col(found);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += vec(i).real();
    for (int k = 1; k < ns; ++k) v[k] = vec(k - 1).real() / sum;
    return v;
}

// One subdivision step: values at depth j from depth j-1 via the refinement
// relation with taps t (h for the scaling cascade, g for the final wavelet
// step).
std::vector<double> subdivide(const std::vector<double>& prev, const std::vector<double>& taps,
                              int ns, int depth) {
    int stride = 1 << (depth - 1);
    size_t n_new = static_cast<size_t>(ns) * (1u << depth) + 1;
    std::vector<double> out(n_new, 0.0);
    for (size_t j = 0; j < n_new; j += 2) out[j] = prev[j / 2];
    for (size_t j = 1; j < n_new; j += 2) {
        double acc = 0.0;
        for (int i = 0; i <= ns; ++i) {
            long long m = static_cast<long long>(j) - static_cast<long long>(i) * stride;
            if (m >= 0 && m < static_cast<long long>(prev.size())) acc += taps[i] * prev[m];
        }
        out[j] = std::numbers::sqrt2 * acc;
    }
    return out;
}

} // namespace

DyadicSamples cascade_evaluate(const FilterBank& fb, BasisFunction which, int depth) {
    if (depth < 1) throw ParameterError("cascade depth must be >= 1");
    int ns = fb.support();

    std::vector<double> v = integer_values(fb);
    int scaling_depth = (which == BasisFunction::Scaling) ? depth : depth - 1;
    for (int j = 1; j <= scaling_depth; ++j) v = subdivide(v, fb.lowpass, ns, j);

    DyadicSamples out;
    out.level = depth;
    out.origin = 0;
    if (which == BasisFunction::Scaling) {
        out.values = std::move(v);
        return out;
    }

    // w(x) = sqrt(2) sum_i g_i s(2x - i) on the depth-J grid from the
    // depth-(J-1) scaling samples.
    int stride = 1 << (depth - 1);
    size_t n = static_cast<size_t>(ns) * (1u << depth) + 1;
    out.values.assign(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= ns; ++i) {
            long long m = static_cast<long long>(j) - static_cast<long long>(i) * stride;
            if (m >= 0 && m < static_cast<long long>(v.size())) acc += fb.highpass[i] * v[m];
        }
        out.values[j] = std::numbers::sqrt2 * acc;
    }
    return out;
}

} // namespace waveritz
