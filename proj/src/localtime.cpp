#include "stratlab/localtime.hpp"

#include "stratlab/error.hpp"
#include "stratlab/moments.hpp"
#include "stratlab/quadrature.hpp"
#include "stratlab/rng.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <limits>
#include <numeric>

namespace stratlab {

namespace {

constexpr int kBatches = 32;

// standard error of the mean from contiguous batch means
double batch_stderr(const std::vector<double>& v, int batches = kBatches) {
    const std::size_t n = v.size();
    const int B = static_cast<int>(std::min<std::size_t>(batches, n));
    if (B < 2) return 0.0;
    std::vector<double> mean(B, 0.0);
    std::vector<int> count(B, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int b = static_cast<int>(i * B / n);
        mean[b] += v[i];
        ++count[b];
    }
    double mu = 0.0;
    for (int b = 0; b < B; ++b) {
        mean[b] /= count[b];
        mu += mean[b];
    }
    mu /= B;
    double ss = 0.0;
    for (int b = 0; b < B; ++b) ss += (mean[b] - mu) * (mean[b] - mu);
    return std::sqrt(ss / (B - 1) / B);
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

// bands depend only on the grid and kernel parameters; paths of one ensemble reuse them
template <class F>
double memo(std::map<std::array<double, 4>, double>& cache, std::array<double, 4> key, F f) {
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (cache.size() > 256) cache.clear();
    return cache[key] = f();
}

double abs_gaussian_moment(double p) { return std::pow(2.0, -0.5 * p) * std::tgamma(0.5 * (1.0 - p)) / std::sqrt(M_PI); }

} // namespace

double band_complex(double h, double theta, double alpha0) {
    require(h > 0.0 && theta > 0.0, ErrorKind::InvalidArgument, "band: h > 0, theta > 0");
    require(alpha0 > 0.0 && alpha0 < 1.0, ErrorKind::InvalidArgument, "band: alpha0 in (0,1)");
    thread_local std::map<std::array<double, 4>, double> cache;
    return memo(cache, {h, theta, alpha0, 0.0}, [&] {
    // E (theta u + i beta(u))^{-a0} = Gamma(a0)^{-1} ∫ lambda^{a0-1} e^{-c u} dlambda, c = theta lambda + lambda^2/2
    auto f = [&](double l) {
        const double c = theta * l + 0.5 * l * l, x = c * h;
        if (x < 1e-3) return h * h * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0);
        return (x + std::expm1(-x)) / (c * c);
    };
    const double scale = std::max(1.0, std::sqrt(2.0 / h));
    return 2.0 * quad::mellin_tail(f, alpha0, 0.0, scale, 1e-12).value / std::tgamma(alpha0);
    });
}

double band_time_frac(double h, double theta, double eta, double alpha0) {
    require(h > 0.0 && theta > 0.0 && eta >= 0.0, ErrorKind::InvalidArgument, "band: h > 0, theta > 0, eta >= 0");
    if (eta == 0.0) return std::pow(theta, -alpha0) * band_time_only(h, alpha0);
    thread_local std::map<std::array<double, 4>, double> cache;
    return memo(cache, {h, theta, eta, alpha0}, [&] {
    // u^{a0/2} E|theta u + i eta sqrt(u) Z|^{-a0} = E (theta^2 u + eta^2 Z^2)^{-a0/2}
    auto ktilde = [&](double u) {
        auto g = [&](double z) {
            return std::exp(-0.5 * z * z) * std::pow(theta * theta * u + eta * eta * z * z, -0.5 * alpha0);
        };
        const double head = quad::gk(g, 0.0, 1.0, 1e-12).value;
        const double tail = quad::gk(g, 1.0, std::numeric_limits<double>::infinity(), 1e-12).value;
        return 2.0 * (head + tail) / std::sqrt(2.0 * M_PI);
    };
    auto f = [&](double u) { return (h - u) * ktilde(u); };
    return 2.0 * quad::power_singular(f, 0.5 * alpha0, h, 1e-11).value;
    });
}

double band_time_only(double h, double alpha0) {
    return 2.0 * std::pow(h, 2.0 - alpha0) / ((1.0 - alpha0) * (2.0 - alpha0));
}

double band_beta_only(double h, double eta, double alpha0) {
    const double q = 0.5 * alpha0;
    return 2.0 * std::pow(eta, -alpha0) * abs_gaussian_moment(alpha0) * std::pow(h, 2.0 - q) / ((1.0 - q) * (2.0 - q));
}

HamiltonianEstimate complex_mean(const PathEnsemble& e, double theta, double alpha0, const SpectralMeasure& m,
                                 double eps, Backend backend) {
    std::vector<double> re(e.m), im(e.m);
    auto one = [&](int i) {
        const auto z = hamiltonian_complex(e.path(i), theta, alpha0, m, eps);
        re[i] = z.real();
        im[i] = z.imag();
    };
    if (backend == Backend::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int i = 0; i < e.m; ++i) one(i);
    } else {
        for (int i = 0; i < e.m; ++i) one(i);
    }
    HamiltonianEstimate out;
    out.value = {mean_of(re), mean_of(im)};
    out.stderr = std::hypot(batch_stderr(re), batch_stderr(im));
    out.m = e.m;
    out.K = e.K;
    out.kernel = "(theta|s-r| + i(beta(s)-beta(r)))^{-alpha0} " + m.name();
    return out;
}

double representation_lhs_n1(double theta, const SpectralMeasure& m, double alpha0, double* error) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "representation: theta > 0");
    auto f = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(-theta * t) * s2_expectation_reduced(t, m, alpha0); };
    const double T = 60.0 / theta;
    const quad::Result r = quad::gk(f, 0.0, T, 1e-10);
    if (error) *error = r.error + 1e-10 * std::abs(r.value);
    return r.value;
}

RepresentationResult representation_check_n1(double theta, const SpectralMeasure& m, double alpha0,
                                             std::int64_t mc_budget, std::uint64_t seed, int K, Backend backend) {
    require(theta > 0.0, ErrorKind::InvalidArgument, "representation: theta > 0");
    require(m.is_atomic(), ErrorKind::InvalidArgument, "representation: FiniteAtomic measure expected");
    require(K >= 4 && K % 2 == 0, ErrorKind::InvalidArgument, "representation: K even and >= 4");
    require(mc_budget >= kBatches, ErrorKind::InvalidArgument, "representation: at least 32 paths");
    require(static_cast<double>(mc_budget) * K * K <= 1e12, ErrorKind::BudgetExceeded,
            "representation: path budget times grid size too large");
    RepresentationResult out;
    out.K = K;
    out.m = static_cast<int>(mc_budget);
    double lhs_err = 0.0;
    out.lhs = representation_lhs_n1(theta, m, alpha0, &lhs_err);

    // horizon: |H(t)| <= gamma(0) theta^{-a0} 2 t^{2-a0} / ((1-a0)(2-a0))
    const SpaceKernel g(m, 0.0);
    const double c = 0.5 * theta * theta, pw = 2.0 - alpha0;
    const double pre = theta / 16.0 * g.at_origin() * std::pow(theta, -alpha0) * 2.0 / ((1.0 - alpha0) * (2.0 - alpha0));
    auto tail = [&](double T) {
        return pre * std::pow(c, -pw - 1.0) * std::tgamma(pw + 1.0) * boost::math::gamma_q(pw + 1.0, c * T);
    };
    double T = 1.0 / c;
    while (tail(T) > 1e-5 * out.lhs) T *= 1.05;
    out.horizon = T;

    const int M = out.m;
    std::vector<double> fine(M), coarse(M);
    auto outer = [&](const std::vector<double>& H, double step) {
        // trapezoid in t of e^{-theta^2 t / 2} H(t)
        double s = 0.0;
        const int n = static_cast<int>(H.size()) - 1;
        for (int k = 0; k <= n; ++k) s += (k == 0 || k == n ? 0.5 : 1.0) * std::exp(-c * k * step) * H[k];
        return theta / 16.0 * step * s;
    };
    auto one = [&](int i, std::vector<double>& H) {
        const Path p = simulate_path(m.dim(), T, K, seed, static_cast<std::uint64_t>(i));
        if (backend == Backend::Parallel) complex_cumulative_fast(p, theta, alpha0, m, 1, H);
        else complex_cumulative_serial(p, theta, alpha0, m, 1, H);
        fine[i] = outer(H, p.h());
        if (backend == Backend::Parallel) complex_cumulative_fast(p, theta, alpha0, m, 2, H);
        else complex_cumulative_serial(p, theta, alpha0, m, 2, H);
        coarse[i] = outer(H, 2.0 * p.h());
    };
    if (backend == Backend::Parallel) {
#pragma omp parallel
        {
            std::vector<double> H;
#pragma omp for schedule(dynamic, 64)
            for (int i = 0; i < M; ++i) one(i, H);
        }
    } else {
        std::vector<double> H;
        for (int i = 0; i < M; ++i) one(i, H);
    }
    out.rhs = mean_of(fine);
    out.rhs_coarse = mean_of(coarse);
    out.stderr = batch_stderr(fine);
    // leading grid error ~ h^{1 - a0/2} from the cells next to the diagonal
    const double order = 1.0 - 0.5 * alpha0;
    out.quad_tolerance = std::abs(out.rhs - out.rhs_coarse) / (std::exp2(order) - 1.0) + lhs_err + tail(T);
    return out;
}

std::vector<ChainSample> chain_samples(std::size_t n, std::uint64_t seed) {
    Rng rng(seed, 0x636861696eULL);
    std::vector<ChainSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        ChainSample& c = out[i];
        c.s = rng.uniform();
        do c.r = rng.uniform();
        while (c.r == c.s);
        // every 64th sample has a frozen auxiliary path
        c.dbeta = i % 64 == 0 ? 0.0 : std::sqrt(std::abs(c.s - c.r)) * rng.normal();
        c.weight = rng.uniform();
    }
    return out;
}

ChainReport kernel_chain_check(const std::vector<ChainSample>& samples, double theta, double alpha0, double scale,
                               double slack) {
    require(theta > 0.0 && scale >= 1.0, ErrorKind::InvalidArgument, "chain: theta > 0, scale >= 1");
    ChainReport rep;
    rep.samples = samples.size();
    auto modulus = [&](double th, double u, double db) { return std::pow(th * th * u * u + db * db, -0.5 * alpha0); };
    for (const auto& c : samples) {
        require(c.s != c.r, ErrorKind::InvalidArgument, "chain: s != r");
        require(c.weight >= 0.0, ErrorKind::InvalidArgument, "chain: gamma weights must be nonnegative");
        const double u = std::abs(c.s - c.r);
        const double re = complex_power(alpha0, theta * u, c.dbeta).real() * c.weight;
        const double mod = modulus(theta, u, c.dbeta) * c.weight;
        const double tb = std::pow(theta * u, -alpha0) * c.weight;
        const double bb = c.dbeta == 0.0 ? std::numeric_limits<double>::infinity()
                                         : std::pow(std::abs(c.dbeta), -alpha0) * c.weight;
        const double ratio = modulus(scale * theta, u, c.dbeta) / modulus(theta, u, c.dbeta);
        double v = 0.0;
        const double ref = std::max(mod, std::numeric_limits<double>::min());
        v = std::max(v, -re / ref);
        v = std::max(v, (re - mod) / ref);
        v = std::max(v, (mod - std::min(tb, bb)) / ref);
        v = std::max(v, std::pow(scale, -alpha0) - ratio);
        v = std::max(v, ratio - 1.0);
        if (c.dbeta == 0.0) v = std::max(v, std::max(std::abs(re - mod), std::abs(mod - tb)) / ref);
        rep.max_violation = std::max(rep.max_violation, v);
        if (v > slack) ++rep.failures;
    }
    return rep;
}

std::vector<TrendPoint> exp_moment_trend(const TrendSpec& s) {
    require(s.b >= 0.0, ErrorKind::InvalidArgument, "trend: b >= 0");
    require(s.m >= 2, ErrorKind::InvalidArgument, "trend: at least two paths");
    std::vector<TrendPoint> out;
    for (std::size_t hi = 0; hi < s.horizons.size(); ++hi) {
        const double t = s.horizons[hi];
        require(t > 0.0, ErrorKind::InvalidArgument, "trend: horizons must be positive");
        std::vector<double> X(s.m);
        const double scale = s.b * std::pow(t, s.alpha0 - 1.0);
#pragma omp parallel for schedule(dynamic, 16)
        for (int i = 0; i < s.m; ++i) {
            const Path p = simulate_path(s.measure.dim(), t, s.K, s.seed, (static_cast<std::uint64_t>(hi) << 40) | i);
            X[i] = scale == 0.0 ? 0.0 : scale * hamiltonian_time_frac(p, s.theta, s.eta, s.alpha0, s.measure, s.eps);
        }
        const double mx = *std::max_element(X.begin(), X.end());
        require(mx <= s.exp_cap, ErrorKind::ExpOverflow, "trend: sample exponent exceeds the cap");
        const int B = std::min(kBatches, s.m);
        std::vector<double> S(B, 0.0);
        std::vector<int> n(B, 0);
        for (int i = 0; i < s.m; ++i) {
            const int b = static_cast<int>(static_cast<std::int64_t>(i) * B / s.m);
            S[b] += std::exp(X[i] - mx);
            ++n[b];
        }
        const double Stot = std::accumulate(S.begin(), S.end(), 0.0);
        TrendPoint tp;
        tp.t = t;
        tp.value = (mx + std::log(Stot / s.m)) / t;
        std::vector<double> loo(B);
        for (int b = 0; b < B; ++b) loo[b] = (mx + std::log((Stot - S[b]) / (s.m - n[b]))) / t;
        const double lm = mean_of(loo);
        double ss = 0.0;
        for (double v : loo) ss += (v - lm) * (v - lm);
        tp.stderr = std::sqrt((B - 1.0) / B * ss);
        out.push_back(tp);
    }
    return out;
}

} // namespace stratlab
