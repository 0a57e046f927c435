#include "stratlab/error.hpp"
#include "stratlab/localtime.hpp"

#include <cmath>
#include <vector>

namespace stratlab {

namespace {

// h^2 sum_{i != j} k(|i-j| h, beta_i - beta_j) gamma(B_i - B_j) + K band gamma(0), midpoints per cell
template <class Kern>
double symmetric_sum(const Path& p, const SpaceKernel& g, Kern k, double band) {
    const int K = p.K, d = p.d;
    const double h = p.h();
    std::vector<double> dx(d);
    double off = 0.0;
    for (int i = 0; i < K; ++i) {
        for (int j = i + 1; j < K; ++j) {
            for (int c = 0; c < d; ++c) dx[c] = p.B_mid(j, c) - p.B_mid(i, c);
            off += k((j - i) * h, p.beta_mid(j) - p.beta_mid(i)) * g(dx.data());
        }
    }
    return 2.0 * h * h * off + K * band * g.at_origin();
}

void require_finite_origin(const SpaceKernel& g) {
    require(std::isfinite(g.at_origin()), ErrorKind::InvalidArgument,
            "diagonal cells need a finite gamma_eps(0); use eps > 0");
}

} // namespace

double hamiltonian_plain(const Path& p, const SpectralMeasure& m, double eps) {
    const SpaceKernel g(m, eps);
    require_finite_origin(g);
    const double h = p.h();
    return symmetric_sum(p, g, [](double, double) { return 1.0; }, h * h);
}

double mutual_local_time(const Path& p1, const Path& p2, const SpectralMeasure& m, double eps) {
    require(p1.K == p2.K && p1.t == p2.t && p1.d == p2.d, ErrorKind::DimensionMismatch, "mutual: paths on different grids");
    const SpaceKernel g(m, eps);
    const int K = p1.K, d = p1.d;
    const double h = p1.h();
    std::vector<double> dx(d);
    double s = 0.0;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            for (int c = 0; c < d; ++c) dx[c] = p1.B_mid(i, c) - p2.B_mid(j, c);
            s += g(dx.data());
        }
    return h * h * s;
}

std::complex<double> hamiltonian_complex(const Path& p, double theta, double alpha0, const SpectralMeasure& m,
                                         double eps) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "hamiltonian_complex: theta > 0");
    const SpaceKernel g(m, eps);
    require_finite_origin(g);
    const int K = p.K, d = p.d;
    const double h = p.h();
    std::vector<double> dx(d);
    std::complex<double> s = 0.0;
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            if (i == j) continue;
            for (int c = 0; c < d; ++c) dx[c] = p.B_mid(i, c) - p.B_mid(j, c);
            s += complex_power(alpha0, theta * std::abs(i - j) * h, p.beta_mid(i) - p.beta_mid(j)) * g(dx.data());
        }
    }
    return h * h * s + K * band_complex(h, theta, alpha0) * g.at_origin();
}

double hamiltonian_time_frac(const Path& p, double theta, double eta, double alpha0, const SpectralMeasure& m,
                             double eps) {
    require(theta > 0.0 && eta >= 0.0, ErrorKind::InvalidArgument, "time_frac: theta > 0, eta >= 0");
    const SpaceKernel g(m, eps);
    require_finite_origin(g);
    auto k = [&](double u, double db) { return std::pow(theta * theta * u * u + eta * eta * db * db, -0.5 * alpha0); };
    return symmetric_sum(p, g, k, band_time_frac(p.h(), theta, eta, alpha0));
}

double hamiltonian_time_only(const Path& p, double alpha0, const SpectralMeasure& m, double eps) {
    const SpaceKernel g(m, eps);
    require_finite_origin(g);
    auto k = [&](double u, double) { return std::pow(u, -alpha0); };
    return symmetric_sum(p, g, k, band_time_only(p.h(), alpha0));
}

double hamiltonian_beta_only(const Path& p, double eta, double alpha0, const SpectralMeasure& m, double eps) {
    require(eta > 0.0, ErrorKind::InvalidArgument, "beta_only: eta > 0");
    const SpaceKernel g(m, eps);
    require_finite_origin(g);
    auto k = [&](double, double db) { return std::pow(eta * std::abs(db), -alpha0); };
    return symmetric_sum(p, g, k, band_beta_only(p.h(), eta, alpha0));
}

void complex_cumulative_serial(const Path& p, double theta, double alpha0, const SpectralMeasure& m, int stride,
                               std::vector<double>& H) {
    require(stride >= 1 && p.K % stride == 0, ErrorKind::InvalidArgument, "cumulative: stride must divide K");
    const SpaceKernel g(m, 0.0);
    const int Kc = p.K / stride, d = p.d;
    const double h = p.h() * stride;
    const double diag = band_complex(h, theta, alpha0) * g.at_origin();
    auto node = [&](int cell) { return stride * (2 * cell + 1); };
    std::vector<double> dx(d);
    H.assign(Kc + 1, 0.0);
    for (int k = 0; k < Kc; ++k) {
        std::complex<double> col = 0.0;
        const int nk = node(k);
        for (int i = 0; i < k; ++i) {
            const int ni = node(i);
            for (int c = 0; c < d; ++c) dx[c] = p.B_at(nk)[c] - p.B_at(ni)[c];
            col += complex_power(alpha0, theta * (k - i) * h, p.beta[nk] - p.beta[ni]) * g(dx.data());
        }
        H[k + 1] = H[k] + 2.0 * h * h * col.real() + diag;
    }
}

} // namespace stratlab
