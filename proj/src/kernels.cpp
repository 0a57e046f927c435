#include "stratlab/kernels.hpp"

#include "stratlab/error.hpp"
#include "stratlab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace stratlab {

namespace {

constexpr double kPi = M_PI;

double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

double norm(const Point& x) {
    if (x.size() == 1) return std::abs(x[0]);
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(const Point& a, const Point& b) {
    require(a.size() == b.size(), ErrorKind::DimensionMismatch, "dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// mollified Riesz kernel at the origin in terms of c': c' E|sqrt(2 eps) Z|^{-alpha}
double riesz_mollified_origin_unit(double alpha, int d, double eps) {
    return std::pow(2.0 * eps, -0.5 * alpha) * std::pow(2.0, -0.5 * alpha) * std::tgamma(0.5 * (d - alpha)) /
           std::tgamma(0.5 * d);
}

// M(a; b; -z), z >= 0; the asymptotic series is truncated at its smallest term
double kummer_negative(double a, double b, double z) {
    if (z <= 40.0) return boost::math::hypergeometric_1F1(a, b, -z);
    double sum = 0.0, term = 1.0;
    for (int k = 0; k < 200; ++k) {
        sum += term;
        const double next = term * (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * z);
        if (std::abs(next) >= std::abs(term) || std::abs(next) < 1e-17 * std::abs(sum)) break;
        term = next;
    }
    return std::tgamma(b) / std::tgamma(b - a) * std::pow(z, -a) * sum;
}

} // namespace

SpectralMeasure::SpectralMeasure(Variant v) : v_(std::move(v)) {}

SpectralMeasure SpectralMeasure::riesz(double alpha, double c, int d) {
    require(d >= 1, ErrorKind::InvalidArgument, "riesz: d >= 1");
    require(alpha > 0.0 && alpha < d, ErrorKind::InvalidArgument, "riesz: need 0 < alpha < d");
    require(c > 0.0, ErrorKind::InvalidArgument, "riesz: need c > 0");
    SpectralMeasure m(RieszRadial{alpha, c, d});
    // match the mollified kernel at x = 0, eps = 1 against c' E|sqrt(2) Z|^{-alpha}
    const double eps = 1.0;
    const double mollified = m.radial_integral([&](double r) { return std::exp(-eps * r * r); }, 1e-13);
    m.c_prime_ = mollified / riesz_mollified_origin_unit(alpha, d, eps);
    return m;
}

SpectralMeasure SpectralMeasure::dirac() { return SpectralMeasure(DiracSpace{}); }

SpectralMeasure SpectralMeasure::atomic(std::vector<Atom> atoms, int d) {
    for (const auto& a : atoms) {
        require(a.w >= 0.0, ErrorKind::InvalidArgument, "atomic: negative weight");
        require(static_cast<int>(a.xi.size()) == d, ErrorKind::DimensionMismatch, "atomic: atom dimension");
    }
    return SpectralMeasure(FiniteAtomic{std::move(atoms), d});
}

SpectralMeasure SpectralMeasure::truncated(std::function<double(double)> density, double R, int d) {
    require(R > 0.0, ErrorKind::InvalidArgument, "truncated: cutoff must be positive");
    require(d >= 1, ErrorKind::InvalidArgument, "truncated: d >= 1");
    return SpectralMeasure(TruncatedRadial{std::move(density), R, d});
}

int SpectralMeasure::dim() const {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DiracSpace>) return 1;
            else return v.d;
        },
        v_);
}

std::string SpectralMeasure::name() const {
    switch (v_.index()) {
    case 0: return "riesz";
    case 1: return "dirac";
    case 2: return "atomic";
    default: return "truncated";
    }
}

bool SpectralMeasure::is_zero() const {
    if (const auto* a = std::get_if<FiniteAtomic>(&v_)) {
        for (const auto& at : a->atoms)
            if (at.w != 0.0) return false;
        return true;
    }
    return false;
}

double SpectralMeasure::alpha() const {
    if (const auto* r = std::get_if<RieszRadial>(&v_)) return r->alpha;
    if (is_dirac()) return 1.0;
    fail(ErrorKind::InvalidArgument, "alpha: measure is not homogeneous");
}

namespace {

// ∫_0^∞ g(r) dr split at increasing scales: [0, s_0] by `head`, pieces spanning many octaves in log r,
// and the tail relative to the largest scale
double split_half_line(const quad::Fn& g, const quad::Fn& head_weightless, double p, std::vector<double> scales,
                       double tol) {
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
    double total = quad::power_singular(head_weightless, p, scales.front(), tol).value;
    for (std::size_t i = 0; i + 1 < scales.size(); ++i) {
        const double a = scales[i], b = scales[i + 1];
        if (b <= 4.0 * a) {
            total += quad::gk(g, a, b, tol).value;
        } else {
            total += quad::gk([&](double u) {
                         const double r = std::exp(u);
                         return g(r) * r;
                     },
                              std::log(a), std::log(b), tol)
                         .value;
        }
    }
    const double s = scales.back();
    total += s * quad::exp_sinh([&](double q) { return g(s * q); }, 1.0, tol).value;
    return total;
}

} // namespace

double SpectralMeasure::radial_integral(const std::function<double(double)>& F, double tol,
                                        std::vector<double> scales) const {
    scales.erase(std::remove_if(scales.begin(), scales.end(), [](double s) { return !(s > 0.0) || !std::isfinite(s); }),
                 scales.end());
    if (scales.empty()) scales.push_back(1.0);
    if (const auto* r = std::get_if<RieszRadial>(&v_)) {
        const double pre = r->c * sphere_area(r->d);
        const double al = r->alpha;
        auto g = [&](double p) { return std::pow(p, al - 1.0) * F(p); };
        return pre * split_half_line(g, F, 1.0 - al, scales, tol);
    }
    if (is_dirac()) return split_half_line(F, F, 0.0, scales, tol) / kPi;
    if (const auto* a = std::get_if<FiniteAtomic>(&v_)) {
        double s = 0.0;
        for (const auto& at : a->atoms) s += at.w * F(norm(at.xi));
        return s;
    }
    const auto& t = std::get<TruncatedRadial>(v_);
    const double pre = sphere_area(t.d) / std::pow(2.0 * kPi, t.d);
    return pre * quad::gk([&](double p) { return t.density(p) * std::pow(p, t.d - 1) * F(p); }, 0.0, t.R, tol)
                     .value;
}

double angular_average(int d, double z) {
    if (d == 1) return std::cos(z);
    if (z == 0.0) return 1.0;
    if (d == 3) return std::sin(z) / z;
    if (d == 2) return std::cyl_bessel_j(0.0, z);
    const double nu = 0.5 * d - 1.0;
    return std::tgamma(0.5 * d) * std::pow(2.0 / z, nu) * std::cyl_bessel_j(nu, z);
}

double gamma_eval(const SpectralMeasure& m, const Point& x) {
    require(static_cast<int>(x.size()) == m.dim(), ErrorKind::DimensionMismatch, "gamma_eval: point dimension");
    const auto& v = m.variant();
    if (m.is_dirac()) {
        require(x[0] != 0.0, ErrorKind::PointwiseUndefined, "gamma_eval: DiracSpace at the origin");
        return 0.0;
    }
    if (const auto* r = std::get_if<RieszRadial>(&v)) {
        (void)r;
        const double n = norm(x);
        require(n > 0.0, ErrorKind::PointwiseUndefined, "gamma_eval: Riesz kernel at the origin");
        return m.riesz_constant() * std::pow(n, -m.alpha());
    }
    if (const auto* a = std::get_if<FiniteAtomic>(&v)) {
        double s = 0.0;
        for (const auto& at : a->atoms) s += at.w * std::cos(dot(at.xi, x));
        return s;
    }
    const auto& t = std::get<TruncatedRadial>(v);
    const double r = norm(x);
    const double pre = sphere_area(t.d) / std::pow(2.0 * kPi, t.d);
    auto f = [&](double p) { return t.density(p) * std::pow(p, t.d - 1) * angular_average(t.d, p * r); };
    const double hp = r > 0.0 ? kPi / r : t.R;
    const double val = pre * quad::half_periods(f, 0.0, t.R, hp, 1e-12).value;
    require(std::isfinite(val), ErrorKind::NonIntegrable, "gamma_eval: transform diverges");
    return val;
}

double gamma_eval(const SpectralMeasure& m, double x) { return gamma_eval(m, Point{x}); }

double gamma_transform(const SpectralMeasure& m, double r, double tol) {
    require(r > 0.0, ErrorKind::PointwiseUndefined, "gamma_transform: needs r > 0");
    if (const auto* rz = std::get_if<RieszRadial>(&m.variant())) {
        const double pre = rz->c * sphere_area(rz->d);
        const double hp = kPi / r;
        auto f = [&](double p) { return angular_average(rz->d, p * r); };
        const double head = quad::power_singular(f, 1.0 - rz->alpha, hp, tol * 1e-2).value;
        auto g = [&](double p) { return std::pow(p, rz->alpha - 1.0) * f(p); };
        const double tail = quad::oscillatory_tail(g, hp, hp, tol).value;
        return pre * (head + tail);
    }
    if (m.is_dirac()) fail(ErrorKind::PointwiseUndefined, "gamma_transform: DiracSpace has no pointwise transform");
    Point p(m.dim(), 0.0);
    p[0] = r;
    return gamma_eval(m, p);
}

double gamma_mollified(const SpectralMeasure& m, double eps, const Point& x) {
    require(eps > 0.0, ErrorKind::InvalidArgument, "gamma_mollified: eps must be positive");
    require(static_cast<int>(x.size()) == m.dim(), ErrorKind::DimensionMismatch, "gamma_mollified: dimension");
    if (const auto* a = std::get_if<FiniteAtomic>(&m.variant())) {
        double s = 0.0;
        for (const auto& at : a->atoms) s += at.w * std::exp(-eps * dot(at.xi, at.xi)) * std::cos(dot(at.xi, x));
        return s;
    }
    const double r = norm(x);
    const int d = m.dim();
    if (m.is_dirac()) return std::exp(-r * r / (4.0 * eps)) / std::sqrt(4.0 * kPi * eps);
    if (const auto* rz = std::get_if<RieszRadial>(&m.variant())) {
        const double a = 0.5 * rz->alpha, b = 0.5 * d;
        return m.riesz_constant() * std::pow(4.0 * eps, -a) * std::tgamma(b - a) / std::tgamma(b) *
               kummer_negative(a, b, r * r / (4.0 * eps));
    }
    const double val = m.radial_integral([&](double p) { return std::exp(-eps * p * p) * angular_average(d, p * r); },
                                         1e-12);
    require(std::isfinite(val), ErrorKind::NonIntegrable, "gamma_mollified: damped integral diverges");
    return val;
}

double gamma_mollified(const SpectralMeasure& m, double eps, double x) { return gamma_mollified(m, eps, Point{x}); }

double psd_min_ratio(const SpectralMeasure& m, double eps, const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    Eigen::MatrixXd A(n, n);
    double maxdiag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Point dx(pts[i].size());
            for (std::size_t k = 0; k < dx.size(); ++k) dx[k] = pts[i][k] - pts[j][k];
            A(i, j) = A(j, i) = gamma_mollified(m, eps, dx);
        }
        maxdiag = std::max(maxdiag, A(i, i));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    return maxdiag > 0.0 ? es.eigenvalues().minCoeff() / maxdiag : es.eigenvalues().minCoeff();
}

double time_kernel_eval(const TimeKernel& k, double u) {
    const double a0 = k.alpha0;
    require(a0 > 0.0 && a0 < 1.0, ErrorKind::InvalidArgument, "time kernel: alpha0 in (0,1)");
    require(k.delta >= 0.0, ErrorKind::InvalidArgument, "time kernel: delta >= 0");
    const double au = std::abs(u);
    if (k.delta == 0.0) {
        if (k.tail) return 0.0;
        require(au > 0.0, ErrorKind::OriginSingularity, "time kernel: |u|^{-alpha0} at u = 0");
        return std::pow(au, -a0);
    }
    // lambda = s^{1/a0}: lambda^{a0-1} dlambda = ds / a0
    const double pre = 1.0 / (a0 * std::tgamma(a0));
    auto f = [&](double s) { return std::exp(-au * std::pow(s, 1.0 / a0)); };
    const double s_cut = std::pow(k.delta, -a0);
    if (!k.tail) return pre * quad::gk(f, 0.0, s_cut, 1e-13).value;
    require(au > 0.0, ErrorKind::OriginSingularity, "time kernel: upper range diverges at u = 0");
    return pre * quad::gk(f, s_cut, std::numeric_limits<double>::infinity(), 1e-13).value;
}

double time_kernel_closed(const TimeKernel& k, double u) {
    const double a0 = k.alpha0;
    const double au = std::abs(u);
    if (k.delta == 0.0) {
        if (k.tail) return 0.0;
        require(au > 0.0, ErrorKind::OriginSingularity, "time kernel: |u|^{-alpha0} at u = 0");
        return std::pow(au, -a0);
    }
    if (au == 0.0) {
        require(!k.tail, ErrorKind::OriginSingularity, "time kernel: upper range diverges at u = 0");
        return std::pow(k.delta, -a0) / (a0 * std::tgamma(a0));
    }
    const double x = au / k.delta;
    return std::pow(au, -a0) * (k.tail ? boost::math::gamma_q(a0, x) : boost::math::gamma_p(a0, x));
}

std::complex<double> complex_power(double alpha0, double u, double v) {
    require(!(u == 0.0 && v == 0.0), ErrorKind::OriginSingularity, "complex_power at (0,0)");
    require(u >= 0.0, ErrorKind::InvalidArgument, "complex_power: u >= 0");
    return std::pow(std::complex<double>(u, v), -alpha0);
}

std::complex<double> complex_power_laplace(double alpha0, double u, double v, double tol) {
    require(!(u == 0.0 && v == 0.0), ErrorKind::OriginSingularity, "complex_power_laplace at (0,0)");
    const double g = std::tgamma(alpha0);
    const double inf = std::numeric_limits<double>::infinity();
    if (v == 0.0) {
        auto f = [&](double s) { return std::exp(-u * std::pow(s, 1.0 / alpha0)); };
        return {quad::gk(f, 0.0, inf, tol).value / (alpha0 * g), 0.0};
    }
    const double hp = kPi / std::abs(v);
    double re = 0.0, im = 0.0;
    for (int part = 0; part < 2; ++part) {
        auto osc = [&](double l) { return part == 0 ? std::cos(l * v) : -std::sin(l * v); };
        auto near = [&](double l) { return std::exp(-l * u) * osc(l); };
        double val = quad::power_singular(near, 1.0 - alpha0, hp, tol * 1e-2).value;
        auto far = [&](double l) { return std::exp(-l * u) * osc(l) * std::pow(l, alpha0 - 1.0); };
        val += quad::oscillatory_tail(far, hp, hp, tol).value;
        (part == 0 ? re : im) = val / g;
    }
    return {re, im};
}

double condition_exponent(Condition which, double alpha0) {
    switch (which) {
    case Condition::Stratonovich: return 0.5 * (2.0 - alpha0);
    case Condition::Skorohod: return 0.5 * (3.0 - alpha0);
    case Condition::Parabolic: return 1.0 - alpha0;
    case Condition::Dalang: return 1.0;
    }
    return 1.0;
}

ConditionResult check_condition(const SpectralMeasure& m, double alpha0, Condition which) {
    ConditionResult out;
    out.p = condition_exponent(which, alpha0);
    const double p = out.p;
    if (m.is_riesz() || m.is_dirac()) {
        // radial integrand ~ rho^{alpha - 1 - 2p} at infinity
        out.finite = 2.0 * p > m.alpha();
    } else {
        out.finite = true;
    }
    out.value = out.finite ? m.radial_integral([&](double r) { return std::pow(1.0 + r * r, -p); }, 1e-11)
                           : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace stratlab
