// Built with fast-math so the inner loops map onto vector libm.
#include "stratlab/error.hpp"
#include "stratlab/localtime.hpp"

#include <cmath>
#include <vector>

namespace stratlab {

void complex_cumulative_fast(const Path& p, double theta, double alpha0, const SpectralMeasure& m, int stride,
                             std::vector<double>& H) {
    require(stride >= 1 && p.K % stride == 0, ErrorKind::InvalidArgument, "cumulative: stride must divide K");
    const auto* atomic = std::get_if<FiniteAtomic>(&m.variant());
    require(atomic != nullptr, ErrorKind::InvalidArgument, "cumulative fast path: FiniteAtomic measure only");
    const int Kc = p.K / stride, d = p.d;
    const double h = p.h() * stride;
    const std::size_t na = atomic->atoms.size();
    double g0 = 0.0;
    for (const auto& a : atomic->atoms) g0 += a.w;
    const double diag = band_complex(h, theta, alpha0) * g0;

    // gamma(x_i - x_k) = sum_a w_a (cos_a(i) cos_a(k) + sin_a(i) sin_a(k))
    std::vector<double> C(na * Kc), S(na * Kc), beta(Kc), g(Kc);
    for (int i = 0; i < Kc; ++i) {
        const int n = stride * (2 * i + 1);
        beta[i] = p.beta[n];
        for (std::size_t a = 0; a < na; ++a) {
            double ph = 0.0;
            for (int c = 0; c < d; ++c) ph += atomic->atoms[a].xi[c] * p.B_at(n)[c];
            C[a * Kc + i] = std::cos(ph);
            S[a * Kc + i] = std::sin(ph);
        }
    }
    const double th = theta * h, ha = -0.5 * alpha0;
    H.assign(Kc + 1, 0.0);
    for (int k = 0; k < Kc; ++k) {
        for (int i = 0; i < k; ++i) g[i] = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            const double w = atomic->atoms[a].w, ck = w * C[a * Kc + k], sk = w * S[a * Kc + k];
            const double* ca = &C[a * Kc];
            const double* sa = &S[a * Kc];
#pragma omp simd
            for (int i = 0; i < k; ++i) g[i] += ck * ca[i] + sk * sa[i];
        }
        const double bk = beta[k];
        double col = 0.0;
#pragma omp simd reduction(+ : col)
        for (int i = 0; i < k; ++i) {
            const double u = th * (k - i), v = bk - beta[i];
            const double mod = std::exp(ha * std::log(u * u + v * v));
            col += mod * std::cos(alpha0 * std::atan(v / u)) * g[i];
        }
        H[k + 1] = H[k] + 2.0 * h * h * col + diag;
    }
}

} // namespace stratlab
