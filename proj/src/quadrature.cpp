#include "stratlab/quadrature.hpp"

#include "stratlab/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace stratlab::quad {

namespace {

void check_finite(const Result& r, const char* who) {
    if (!std::isfinite(r.value)) fail(ErrorKind::QuadratureFailure, std::string(who) + ": non-finite value");
}

} // namespace

Result gk(const Fn& f, double a, double b, double tol, unsigned max_depth) {
    Result r;
    if (a == b) return r;
    try {
        using rule = boost::math::quadrature::gauss_kronrod<double, 21>;
        if (std::isfinite(a) && std::isfinite(b)) {
            // the library's stopping test is not scale invariant on very short intervals; map to [0, 1]
            const double len = b - a;
            auto g = [&](double s) { return f(a + len * s); };
            r.value = len * rule::integrate(g, 0.0, 1.0, max_depth, tol, &r.error);
            r.error *= std::abs(len);
        } else {
            r.value = rule::integrate(f, a, b, max_depth, tol, &r.error);
        }
    } catch (const std::exception& e) {
        fail(ErrorKind::QuadratureFailure, std::string("gauss_kronrod: ") + e.what());
    }
    check_finite(r, "gauss_kronrod");
    return r;
}

Result tanh_sinh(const Fn& f, double a, double b, double tol) {
    Result r;
    if (a == b) return r;
    static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    try {
        r.value = rule.integrate(f, a, b, tol, &r.error);
    } catch (const std::exception& e) {
        fail(ErrorKind::QuadratureFailure, std::string("tanh_sinh: ") + e.what());
    }
    check_finite(r, "tanh_sinh");
    return r;
}

Result exp_sinh(const Fn& f, double a, double tol) {
    Result r;
    static thread_local boost::math::quadrature::exp_sinh<double> rule(9);
    try {
        r.value = rule.integrate(f, a, std::numeric_limits<double>::infinity(), tol, &r.error);
    } catch (const std::exception& e) {
        fail(ErrorKind::QuadratureFailure, std::string("exp_sinh: ") + e.what());
    }
    check_finite(r, "exp_sinh");
    return r;
}

Result gk_split(const Fn& f, double a, double b, const std::vector<double>& cuts, double tol) {
    std::vector<double> pts{a};
    for (double c : cuts)
        if (c > a && c < b) pts.push_back(c);
    std::sort(pts.begin() + 1, pts.end());
    pts.push_back(b);
    Result out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Result r = gk(f, pts[i], pts[i + 1], tol);
        out.value += r.value;
        out.error += r.error;
    }
    return out;
}

Result power_singular(const Fn& f, double p, double b, double tol) {
    require(p < 1.0, ErrorKind::InvalidArgument, "power_singular: exponent must be < 1");
    if (b <= 0.0) return {};
    const double q = 1.0 - p;
    // u = w^{1/q}: u^{-p} du = dw / q
    const double wb = std::pow(b, q);
    Result r = gk([&](double w) { return f(std::pow(w, 1.0 / q)) / q; }, 0.0, wb, tol);
    return r;
}

Result mellin_tail(const Fn& f, double s, double a, double scale, double tol) {
    require(s > 0.0 && s < 1.0, ErrorKind::InvalidArgument, "mellin_tail: exponent in (0,1)");
    require(a >= 0.0 && scale > 0.0, ErrorKind::InvalidArgument, "mellin_tail: a >= 0, scale > 0");
    Result out;
    double lo = a;
    if (a == 0.0) {
        out = power_singular(f, 1.0 - s, scale, tol);
        lo = scale;
    } else if (a < scale) {
        out = gk([&](double x) { return std::pow(x, s - 1.0) * f(x); }, a, scale, tol);
        lo = scale;
    }
    // x = lo w^{-k}
    const double k = 1.0 / (1.0 - s);
    const Result tail = gk(
        [&](double w) {
            if (w <= 0.0) return 0.0;
            const double x = lo * std::pow(w, -k);
            return std::pow(x, s - 1.0) * f(x) * k * x / w;
        },
        0.0, 1.0, tol);
    out.value += tail.value;
    out.error += tail.error;
    return out;
}

Result half_periods(const Fn& f, double a, double b, double half_period, double tol) {
    Result out;
    if (b <= a) return out;
    double lo = a;
    while (lo < b) {
        double hi = std::min(b, (std::floor(lo / half_period + 1e-12) + 1.0) * half_period);
        if (hi <= lo) hi = std::min(b, lo + half_period);
        Result r = gk(f, lo, hi, tol, 12);
        out.value += r.value;
        out.error += r.error;
        lo = hi;
    }
    return out;
}

double wynn_epsilon(const std::vector<double>& s, double* err) {
    const std::size_t n = s.size();
    if (n == 0) return 0.0;
    if (n < 3) {
        if (err) *err = n == 2 ? std::abs(s[1] - s[0]) : std::numeric_limits<double>::infinity();
        return s.back();
    }
    // e[k] holds column k of the epsilon table for the current diagonal
    std::vector<std::vector<double>> eps(n + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) eps[i][1] = s[i];
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i + k <= n; ++i) {
            const double d = eps[i + 1][k - 1] - eps[i][k - 1];
            eps[i][k] = eps[i + 1][k - 2] + (d == 0.0 ? std::numeric_limits<double>::max() : 1.0 / d);
        }
    }
    // odd columns (1-based) hold the estimates; take the deepest stable ones
    std::size_t kmax = (n % 2 == 1) ? n : n - 1;
    double best = eps[0][kmax];
    double prev = (kmax >= 3) ? eps[1][kmax - 2] : s.back();
    if (!std::isfinite(best)) {
        best = s.back();
        prev = s[n - 2];
    }
    if (err) *err = std::abs(best - prev);
    return best;
}

Result oscillatory_tail(const Fn& f, double a, double half_period, double tol, int max_terms) {
    std::vector<double> partial;
    double sum = 0.0;
    double lo = a;
    double last_est = std::numeric_limits<double>::quiet_NaN();
    int stable = 0;
    for (int k = 0; k < max_terms; ++k) {
        const double hi = (std::floor(lo / half_period + 1e-12) + 1.0) * half_period;
        Result r = gk(f, lo, hi, tol * 1e-2, 12);
        sum += r.value;
        lo = hi;
        partial.push_back(sum);
        if (std::abs(r.value) <= tol * std::max(1.0, std::abs(sum)) * 1e-3 && k > 4) {
            return {sum, std::abs(r.value)};
        }
        if (partial.size() >= 9) {
            std::vector<double> window(partial.end() - std::min<std::size_t>(partial.size(), 25), partial.end());
            double e = 0.0;
            const double est = wynn_epsilon(window, &e);
            if (std::isfinite(last_est) && std::abs(est - last_est) <= tol * std::max(1.0, std::abs(est))) {
                if (++stable >= 2) return {est, std::abs(est - last_est) + e * 1e-3};
            } else {
                stable = 0;
            }
            last_est = est;
        }
    }
    if (std::isfinite(last_est)) return {last_est, std::abs(last_est - partial.back())};
    fail(ErrorKind::QuadratureFailure, "oscillatory_tail: no convergence");
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

} // namespace stratlab::quad
