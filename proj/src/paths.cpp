#include "stratlab/error.hpp"
#include "stratlab/localtime.hpp"
#include "stratlab/rng.hpp"

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>
#include <limits>

namespace stratlab {

Path simulate_path(int d, double t, int K, std::uint64_t seed, std::uint64_t index, bool with_cauchy) {
    require(K >= 2, ErrorKind::InvalidArgument, "simulate_path: K >= 2");
    require(d >= 1, ErrorKind::InvalidArgument, "simulate_path: d >= 1");
    require(t > 0.0, ErrorKind::InvalidArgument, "simulate_path: t > 0");
    Path p;
    p.K = K;
    p.t = t;
    p.d = d;
    const int nodes = 2 * K + 1;
    p.B.assign(static_cast<std::size_t>(nodes) * d, 0.0);
    p.beta.assign(nodes, 0.0);
    Rng rng(seed, index);
    const double half = 0.5 * t / K;
    const double sd = std::sqrt(half);
    for (int j = 1; j < nodes; ++j) {
        for (int c = 0; c < d; ++c) p.B[j * d + c] = p.B[(j - 1) * d + c] + sd * rng.normal();
        p.beta[j] = p.beta[j - 1] + sd * rng.normal();
    }
    if (with_cauchy) {
        // Cauchy increments over a step of length u have scale u
        p.kappa.assign(nodes, 0.0);
        for (int j = 1; j < nodes; ++j) p.kappa[j] = p.kappa[j - 1] + half * rng.cauchy();
    }
    return p;
}

PathEnsemble simulate_paths(int d, double t, int K, int m, std::uint64_t seed, bool with_cauchy) {
    require(K >= 2, ErrorKind::InvalidArgument, "simulate_paths: K >= 2");
    require(m >= 1, ErrorKind::InvalidArgument, "simulate_paths: m >= 1");
    require(d >= 1 && t > 0.0, ErrorKind::InvalidArgument, "simulate_paths: d >= 1, t > 0");
    return PathEnsemble{m, K, t, d, with_cauchy, seed};
}

SpaceKernel::SpaceKernel(const SpectralMeasure& m, double eps) : d_(m.dim()) {
    require(eps >= 0.0, ErrorKind::InvalidArgument, "space kernel: eps >= 0");
    const int d = d_;
    auto r2 = [d](const double* x) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += x[c] * x[c];
        return s;
    };
    if (const auto* a = std::get_if<FiniteAtomic>(&m.variant())) {
        std::vector<Atom> atoms = a->atoms;
        for (auto& at : atoms) {
            double k2 = 0.0;
            for (double v : at.xi) k2 += v * v;
            at.w *= std::exp(-eps * k2);
            origin_ += at.w;
        }
        f_ = [atoms, d](const double* x) {
            double s = 0.0;
            for (const auto& at : atoms) {
                double ph = 0.0;
                for (int c = 0; c < d; ++c) ph += at.xi[c] * x[c];
                s += at.w * std::cos(ph);
            }
            return s;
        };
        return;
    }
    if (m.is_dirac()) {
        require(eps > 0.0, ErrorKind::InvalidArgument, "space kernel: DiracSpace needs eps > 0");
        const double pre = 1.0 / std::sqrt(4.0 * M_PI * eps);
        origin_ = pre;
        f_ = [pre, eps](const double* x) { return pre * std::exp(-x[0] * x[0] / (4.0 * eps)); };
        return;
    }
    if (m.is_riesz()) {
        const double al = m.alpha(), cp = m.riesz_constant();
        if (eps == 0.0) {
            origin_ = std::numeric_limits<double>::infinity();
            f_ = [cp, al, r2](const double* x) { return cp * std::pow(r2(x), -0.5 * al); };
            return;
        }
        // c' E|x + sqrt(2 eps) Z|^{-alpha} via Kummer's function
        const double pre = cp * std::pow(4.0 * eps, -0.5 * al) * std::tgamma(0.5 * (d - al)) / std::tgamma(0.5 * d);
        origin_ = pre;
        f_ = [pre, al, d, eps, r2](const double* x) {
            return pre * boost::math::hypergeometric_1F1(0.5 * al, 0.5 * d, -r2(x) / (4.0 * eps));
        };
        return;
    }
    SpectralMeasure mm = m;
    origin_ = eps > 0.0 ? gamma_mollified(m, eps, Point(d, 0.0)) : gamma_eval(m, Point(d, 0.0));
    f_ = [mm, eps, d](const double* x) {
        Point p(x, x + d);
        return eps > 0.0 ? gamma_mollified(mm, eps, p) : gamma_eval(mm, p);
    };
}

double SpaceKernel::operator()(const double* dx) const { return f_(dx); }

} // namespace stratlab
