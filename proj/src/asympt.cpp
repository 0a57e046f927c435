#include "stratlab/asympt.hpp"

#include "stratlab/error.hpp"
#include "stratlab/moments.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

namespace stratlab {

void check_rate_hypothesis(const RateInputs& r) {
    require(r.alpha0 > 0.0 && r.alpha0 < 1.0, ErrorKind::HypothesisViolated, "rate: alpha0 in (0,1)");
    require(r.alpha > 0.0, ErrorKind::HypothesisViolated, "rate: alpha > 0");
    require(r.alpha0 + r.alpha < 2.0, ErrorKind::HypothesisViolated, "rate: alpha0 + alpha < 2");
    require(r.alpha < r.d || (r.alpha == 1.0 && r.d == 1), ErrorKind::HypothesisViolated,
            "rate: alpha < d, or alpha = d = 1");
}

namespace {

// log of 2 (4-a-2a0)^{(4-a-2a0)/2} / (4-a-a0)^{4-a-a0}
double log_shape(double a, double a0) {
    const double p = 4.0 - a - 2.0 * a0, q = 4.0 - a - a0;
    return std::log(2.0) + 0.5 * p * std::log(p) - q * std::log(q);
}

} // namespace

double moment_base_M(const RateInputs& r) {
    check_rate_hypothesis(r);
    require(r.M >= 0.0, ErrorKind::InvalidArgument, "rate: M >= 0");
    if (r.M == 0.0) return 0.0;
    const double a = r.alpha;
    return std::exp(log_shape(a, r.alpha0) + 0.5 * (4.0 - a) * std::log(r.M / (4.0 - a)));
}

double moment_base_E0(const RateInputs& r) {
    check_rate_hypothesis(r);
    require(r.E0 >= 0.0, ErrorKind::InvalidArgument, "rate: E0 >= 0");
    if (r.E0 == 0.0) return 0.0;
    const double a = r.alpha;
    // shape / 2^4 in place of 2 shape, times (2 E0 / (2 - a))^{(2-a)/2}
    return std::exp(log_shape(a, r.alpha0) - 4.0 * std::log(2.0) + 0.5 * (2.0 - a) * std::log(2.0 * r.E0 / (2.0 - a)));
}

double predict_moment_prefactor(int n, const RateInputs& r) {
    require(n >= 0, ErrorKind::InvalidArgument, "prefactor: n >= 0");
    const double b = moment_base_E0(r);
    return n == 0 ? 1.0 : std::pow(b, n);
}

double predict_moment_prefactor_M(int n, const RateInputs& r) {
    require(n >= 0, ErrorKind::InvalidArgument, "prefactor: n >= 0");
    const double b = moment_base_M(r);
    return n == 0 ? 1.0 : std::pow(b, n);
}

RatePrediction predict_logEu_rate(const RateInputs& r) {
    check_rate_hypothesis(r);
    RatePrediction out;
    const double a = r.alpha;
    out.exponent = (4.0 - a - r.alpha0) / (3.0 - a);
    out.constant = (3.0 - a) * std::pow(moment_base_M(r), 1.0 / (3.0 - a));
    out.tag = "logEu";
    return out;
}

RatePrediction predict_logEup_rate(int p, const RateInputs& r) {
    require(p >= 1, ErrorKind::InvalidArgument, "conjecture: p >= 1");
    RatePrediction out = predict_logEu_rate(r);
    out.constant *= std::pow(static_cast<double>(p), (4.0 - r.alpha) / (3.0 - r.alpha));
    out.conjecture = true;
    out.tag = "logEup conjecture";
    return out;
}

double mittag_leffler_log(double theta, double g, double b) {
    require(theta > 0.0 && g > 0.0 && b > 0.0, ErrorKind::InvalidArgument, "mittag-leffler: positive inputs");
    const double lt = std::log(theta) + std::log(b);
    // streaming log-sum-exp; stop once past the peak and terms fall 40 e-folds below the running maximum
    double mx = 0.0, acc = 1.0; // n = 0 term
    for (long n = 1;; ++n) {
        const double lterm = n * lt - g * std::lgamma(n + 1.0);
        if (lterm > mx) {
            acc = acc * std::exp(mx - lterm) + 1.0;
            mx = lterm;
        } else {
            acc += std::exp(lterm - mx);
            const double slope = lt - g * std::log(n + 1.0);
            if (slope < 0.0 && lterm < mx - 40.0) break;
        }
        require(n < 100000000L, ErrorKind::BudgetExceeded, "mittag-leffler: series too long");
    }
    return mx + std::log(acc);
}

std::vector<std::pair<double, double>> mittag_leffler_rate(double theta, double g, const std::vector<double>& b_list) {
    std::vector<std::pair<double, double>> out;
    double prev = 0.0;
    for (double b : b_list) {
        require(b > prev, ErrorKind::InvalidArgument, "mittag-leffler: b_list must increase");
        prev = b;
        out.emplace_back(b, std::pow(b, -1.0 / g) * mittag_leffler_log(theta, g, b));
    }
    return out;
}

double log_upper_gamma(double a, double x) {
    require(a > 0.0 && x >= 0.0, ErrorKind::InvalidArgument, "upper gamma: a > 0, x >= 0");
    const double q = boost::math::gamma_q(a, x);
    if (q > 1e-300) return std::lgamma(a) + std::log(q);
    // x > a + 1 here; modified Lentz on the continued fraction of Gamma(a, x) e^x x^{-a}
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    if (!(h > 0.0)) return -std::numeric_limits<double>::infinity();
    return -x + a * std::log(x) + std::log(h);
}

double gamma_tail_negligibility(double eta, int n, double alpha0, double c) {
    require(eta > 0.0 && c > 0.0, ErrorKind::InvalidArgument, "gamma tail: eta > 0, c > 0");
    require(n >= 1, ErrorKind::InvalidArgument, "gamma tail: n >= 1");
    require(alpha0 >= 0.0 && alpha0 <= 1.0, ErrorKind::InvalidArgument, "gamma tail: alpha0 in [0,1]");
    const double a = (1.0 - alpha0) * n + 1.0, T = n / (eta * eta);
    // ∫_T^∞ t^{a-1} e^{-ct} dt = c^{-a} Gamma(a, cT)
    const double lg = log_upper_gamma(a, c * T);
    if (!std::isfinite(lg)) return -std::numeric_limits<double>::infinity();
    const double v = -(1.0 - alpha0) * std::lgamma(n + 1.0) - a * std::log(c) + lg;
    return v / n;
}

SmallNReport small_n_consistency(const SpectralMeasure& m, double alpha0, const std::vector<double>& t_grid, double E0) {
    require(m.is_riesz() || m.is_dirac(), ErrorKind::InvalidArgument, "small-n: homogeneous measure expected");
    require(t_grid.size() >= 2, ErrorKind::InvalidArgument, "small-n: at least two horizons");
    SmallNReport rep;
    rep.expected_exponent = 4.0 - m.alpha() - alpha0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(t_grid.size());
    double logA = 0.0;
    for (double t : t_grid) {
        const double x = std::log(t), y = std::log(s2_expectation_reduced(t, m, alpha0));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        logA += y - rep.expected_exponent * x;
    }
    rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.A = std::exp(logA / n);
    if (E0 > 0.0) rep.prefactor_n1 = moment_base_E0(RateInputs{m.alpha(), alpha0, m.dim(), 0.0, E0});
    return rep;
}

} // namespace stratlab
