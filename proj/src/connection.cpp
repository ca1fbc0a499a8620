#include "waveritz/connection.hpp"
#include "waveritz/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace waveritz {

namespace {

// Transfer matrix B[d][e] = a0_{e-2d} with a0 the plain tap autocorrelation.
Eigen::MatrixXd transfer_matrix(const FilterBank& fb, int dmax) {
    int n = 2 * dmax + 1;
    Eigen::MatrixXd b(n, n);
    for (int di = 0; di < n; ++di)
        for (int ei = 0; ei < n; ++ei)
            b(di, ei) = filter_autocorrelation(fb.lowpass, 0, (ei - dmax) - 2 * (di - dmax));
    return b;
}

} // namespace

ConnectionTable connection_table(const FilterBank& fb) {
    if (fb.genus < 3)
        throw SmoothnessError("second-derivative connection coefficients need genus >= 3");
    int ns = fb.support();
    int dmax = ns - 1;
    int n = 2 * dmax + 1;
    ConnectionTable ct;
    ct.genus = fb.genus;
    ct.dmax = dmax;

    Eigen::MatrixXd b = transfer_matrix(fb, dmax);

    // Lambda = 4 B Lambda: eigenvector of B at eigenvalue 1/4, normalized by
    // the exact action on x^2, sum_d d^2 Lambda_d = 2.
    Eigen::EigenSolver<Eigen::MatrixXd> es(b);
    int best = -1;
    double dist = 1.0;
    for (int i = 0; i < n; ++i) {
        double d = std::abs(es.eigenvalues()[i] - 0.25);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    if (best < 0 || dist > 1e-8)
        throw DegeneracyError("transfer matrix lacks eigenvalue 1/4");
    ct.lambda_.resize(n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        ct.lambda_[i] = es.eigenvectors()(i, best).real();
        int d = i - dmax;
        norm += double(d) * double(d) * ct.lambda_[i];
    }
    for (auto& v : ct.lambda_) v *= 2.0 / norm;

    // T_1: (I - B/2) t1 = rhs with rhs_d = a1_{-2d} / 2.
    Eigen::VectorXd rhs1(n);
    for (int di = 0; di < n; ++di)
        rhs1(di) = 0.5 * filter_autocorrelation(fb.lowpass, 1, -2 * (di - dmax));
    Eigen::VectorXd t1 = (Eigen::MatrixXd::Identity(n, n) - 0.5 * b).partialPivLu().solve(rhs1);

    // T_2: (I - B/4) t2 = rhs with rhs_d = (a2_{-2d} + 2 sum_e a1_{e-2d} T_1(e)) / 4.
    Eigen::VectorXd rhs2(n);
    for (int di = 0; di < n; ++di) {
        double s = filter_autocorrelation(fb.lowpass, 2, -2 * (di - dmax));
        for (int ei = 0; ei < n; ++ei)
            s += 2.0 * filter_autocorrelation(fb.lowpass, 1, (ei - dmax) - 2 * (di - dmax)) * t1(ei);
        rhs2(di) = 0.25 * s;
    }
    Eigen::VectorXd t2 = (Eigen::MatrixXd::Identity(n, n) - 0.25 * b).partialPivLu().solve(rhs2);

    ct.t1_.assign(t1.data(), t1.data() + n);
    ct.t2_.assign(t2.data(), t2.data() + n);
    return ct;
}

void save_connection_table(const ConnectionTable& ct, const std::filesystem::path& file) {
    std::ostringstream os;
    os << "conntab v1 genus=" << ct.genus << "\n";
    char buf[96];
    for (int d = -ct.dmax; d <= ct.dmax; ++d) {
        std::snprintf(buf, sizeof buf, "L %d %.17g\n", d, ct.lap(d));
        os << buf;
    }
    for (int nn = 1; nn <= 2; ++nn)
        for (int d = -ct.dmax; d <= ct.dmax; ++d) {
            std::snprintf(buf, sizeof buf, "T %d %d %.17g\n", nn, d, ct.tpoly(nn, d));
            os << buf;
        }
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    std::ofstream out(tmp);
    if (!out) throw FormatError("cannot write " + file.string());
    out << os.str();
    out.close();
    std::filesystem::rename(tmp, file);
}

ConnectionTable load_connection_table(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw FormatError("cannot open " + file.string());
    std::string head;
    std::getline(in, head);
    std::istringstream hs(head);
    std::string tag, ver, gfield;
    hs >> tag >> ver >> gfield;
    if (tag != "conntab" || ver != "v1" || gfield.rfind("genus=", 0) != 0)
        throw FormatError("bad connection cache header in " + file.string());
    ConnectionTable ct;
    ct.genus = std::stoi(gfield.substr(6));
    ct.dmax = 2 * ct.genus - 2;
    int n = 2 * ct.dmax + 1;
    ct.lambda_.assign(n, 0.0);
    ct.t1_.assign(n, 0.0);
    ct.t2_.assign(n, 0.0);
    std::string kind;
    while (in >> kind) {
        if (kind == "L") {
            int d;
            double v;
            if (!(in >> d >> v)) throw FormatError("truncated conntab " + file.string());
            ct.lambda_[d + ct.dmax] = v;
        } else if (kind == "T") {
            int nn, d;
            double v;
            if (!(in >> nn >> d >> v)) throw FormatError("truncated conntab " + file.string());
            (nn == 1 ? ct.t1_ : ct.t2_)[d + ct.dmax] = v;
        } else {
            throw FormatError("unknown record '" + kind + "' in " + file.string());
        }
    }
    return ct;
}

ConnectionTable cached_connection_table(const FilterBank& fb, const std::filesystem::path& cache_dir) {
    std::filesystem::path file = cache_dir / ("conntab_p" + std::to_string(fb.genus) + ".txt");
    if (std::filesystem::exists(file)) return load_connection_table(file);
    ConnectionTable ct = connection_table(fb);
    std::filesystem::create_directories(cache_dir);
    save_connection_table(ct, file);
    return ct;
}

} // namespace waveritz
