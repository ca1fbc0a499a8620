#include "waveritz/filters.hpp"
#include "waveritz/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace waveritz {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= double(n - k + j) / double(j);
    return r;
}

// Roots of a real polynomial (lowest-degree coefficient first) via the
// companion matrix.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
    int deg = static_cast<int>(c.size()) - 1;
    while (deg > 0 && c[deg] == 0.0) --deg;
    if (deg < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) {
        comp(0, i) = -c[deg - 1 - i] / c[deg];
        if (i + 1 < deg) comp(i + 1, i) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    std::vector<std::complex<double>> out(deg);
    for (int i = 0; i < deg; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Initial guess via spectral factorization: m0(z) = ((1+z)/2)^p Q(z) with
// |Q(e^{-iw})|^2 = P(sin^2(w/2)) and Q built from the unit-disk roots.
std::vector<double> spectral_factor_guess(int p) {
    if (p == 1) return {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2};

    // P(y) = sum_{k<p} C(p-1+k, k) y^k evaluated at y(z) = (2 - z - 1/z)/4,
    // as a Laurent series over exponents [-(p-1), p-1].
    int n = 2 * p - 1; // number of Laurent coefficients
    std::vector<double> acc(n, 0.0);
    acc[p - 1] = binomial(2 * p - 2, p - 1); // constant term at offset p-1
    std::vector<double> y = {-0.25, 0.5, -0.25};
    for (int k = p - 2; k >= 0; --k) {
        std::vector<double> next(n, 0.0);
        for (int e = 0; e < n; ++e) {
            if (acc[e] == 0.0) continue;
            for (int t = 0; t < 3; ++t) {
                int e2 = e + t - 1;
                if (e2 >= 0 && e2 < n) next[e2] += acc[e] * y[t];
            }
        }
        next[p - 1] += binomial(p - 1 + k, k);
        acc = std::move(next);
    }

    // acc is now R(z) = z^{p-1} P(y(z)), an ordinary degree-2(p-1) polynomial.
    // Roots come in reciprocal pairs; keeping the outside-disk ones yields
    // the standard extremal-phase tap ordering.
    auto roots = poly_roots(acc);
    std::vector<std::complex<double>> outside;
    for (auto z : roots)
        if (std::abs(z) > 1.0) outside.push_back(z);
    if (static_cast<int>(outside.size()) != p - 1)
        throw DegeneracyError("spectral factorization failed for genus " + std::to_string(p));

    std::vector<std::complex<double>> q = {1.0};
    for (auto r : outside) {
        std::vector<std::complex<double>> next(q.size() + 1, 0.0);
        for (size_t i = 0; i < q.size(); ++i) {
            next[i] += q[i] * (-r);
            next[i + 1] += q[i];
        }
        q = std::move(next);
    }
    std::vector<double> qr(q.size());
    double qsum = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        qr[i] = q[i].real();
        qsum += qr[i];
    }
    for (auto& v : qr) v /= qsum; // Q(1) = 1

    std::vector<double> m0 = {1.0};
    for (int i = 0; i < p; ++i) m0 = convolve(m0, {0.5, 0.5});
    m0 = convolve(m0, qr);
    for (auto& v : m0) v *= std::numbers::sqrt2;
    return m0;
}

// Newton iteration on the defining system: p shift-orthonormality equations
// and p vanishing-moment equations in the 2p taps.
std::vector<double> newton_polish(std::vector<double> h, int p) {
    const int n = 2 * p;
    auto residual = [&](const std::vector<double>& x) {
        Eigen::VectorXd f(n);
        for (int k = 0; k < p; ++k) {
            double s = 0.0;
            for (int i = 0; i + 2 * k < n; ++i) s += x[i] * x[i + 2 * k];
            f(k) = s - (k == 0 ? 1.0 : 0.0);
        }
        for (int m = 0; m < p; ++m) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += (i % 2 ? -1.0 : 1.0) * (m == 0 ? 1.0 : std::pow(double(i), m)) * x[i];
            f(p + m) = s;
        }
        return f;
    };
    for (int iter = 0; iter < 50; ++iter) {
        Eigen::VectorXd f = residual(h);
        if (f.lpNorm<Eigen::Infinity>() < 1e-15) break;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
        for (int k = 0; k < p; ++k)
            for (int i = 0; i + 2 * k < n; ++i) {
                J(k, i) += h[i + 2 * k];
                J(k, i + 2 * k) += h[i];
            }
        for (int m = 0; m < p; ++m)
            for (int i = 0; i < n; ++i)
                J(p + m, i) = (i % 2 ? -1.0 : 1.0) * (m == 0 ? 1.0 : std::pow(double(i), m));
        Eigen::VectorXd step = J.partialPivLu().solve(f);
        for (int i = 0; i < n; ++i) h[i] -= step(i);
    }
    return h;
}

} // namespace

FilterBank build_filter(int genus) {
    if (genus < 1 || genus > 10)
        throw UnsupportedFamilyError("genus must be in 1..10, got " + std::to_string(genus));
    FilterBank fb;
    fb.genus = genus;
    fb.lowpass = newton_polish(spectral_factor_guess(genus), genus);
    int ns = 2 * genus - 1;
    fb.highpass.resize(ns + 1);
    for (int i = 0; i <= ns; ++i)
        fb.highpass[i] = (i % 2 ? -1.0 : 1.0) * fb.lowpass[ns - i];
    return fb;
}

double filter_autocorrelation(const std::vector<double>& taps, int q, int c) {
    double s = 0.0;
    int n = static_cast<int>(taps.size());
    for (int i = 0; i < n; ++i) {
        int j = i + c;
        if (j < 0 || j >= n) continue;
        s += (q == 0 ? 1.0 : std::pow(double(i), q)) * taps[i] * taps[j];
    }
    return s;
}

void save_filter(const FilterBank& fb, const std::filesystem::path& file) {
    std::ostringstream os;
    os << "dbfilter v1 genus=" << fb.genus << "\n";
    char buf[64];
    for (double h : fb.lowpass) {
        std::snprintf(buf, sizeof buf, "%.17g\n", h);
        os << buf;
    }
    std::filesystem::create_directories(file.parent_path().empty() ? "." : file.parent_path());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    std::ofstream out(tmp);
    if (!out) throw FormatError("cannot write " + file.string());
    out << os.str();
    out.close();
    std::filesystem::rename(tmp, file);
}

FilterBank load_filter(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw FormatError("cannot open " + file.string());
    std::string tag, ver;
    int genus = 0;
    std::string head;
    std::getline(in, head);
    std::istringstream hs(head);
    std::string gfield;
    hs >> tag >> ver >> gfield;
    if (tag != "dbfilter" || ver != "v1" || gfield.rfind("genus=", 0) != 0)
        throw FormatError("bad filter cache header in " + file.string());
    genus = std::stoi(gfield.substr(6));
    FilterBank fb;
    fb.genus = genus;
    int ns = 2 * genus - 1;
    fb.lowpass.resize(ns + 1);
    for (int i = 0; i <= ns; ++i)
        if (!(in >> fb.lowpass[i])) throw FormatError("truncated filter cache " + file.string());
    fb.highpass.resize(ns + 1);
    for (int i = 0; i <= ns; ++i)
        fb.highpass[i] = (i % 2 ? -1.0 : 1.0) * fb.lowpass[ns - i];
    return fb;
}

FilterBank cached_filter(int genus, const std::filesystem::path& cache_dir) {
    std::filesystem::path file = cache_dir / ("dbfilter_p" + std::to_string(genus) + ".txt");
    if (std::filesystem::exists(file)) return load_filter(file);
    FilterBank fb = build_filter(genus);
    std::filesystem::create_directories(cache_dir);
    save_filter(fb, file);
    return fb;
}

} // namespace waveritz
