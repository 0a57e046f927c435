#include "stratlab/wavegreen.hpp"

#include "stratlab/error.hpp"
#include "stratlab/quadrature.hpp"

#include <cmath>

namespace stratlab {

namespace {

constexpr double kPi = M_PI;

double norm(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void check_spec(const GreenSpec& g) {
    require(g.d >= 1 && g.d <= 3, ErrorKind::InvalidArgument, "green: d must be 1, 2 or 3");
    require(g.eta >= 0.0, ErrorKind::InvalidArgument, "green: eta >= 0");
}

// Laplace transform ∫_a^∞ e^{-rate t} f(t) dt truncated where the tail is negligible
quad::Result laplace_tail(const quad::Fn& f, double rate, double a, double tol) {
    quad::Result total;
    double lo = a;
    double width = std::max(1.0, 4.0 / rate);
    for (int k = 0; k < 200; ++k) {
        const double hi = lo + width;
        quad::Result r = quad::gk(f, lo, hi, tol * 1e-2);
        total.value += r.value;
        total.error += r.error;
        lo = hi;
        width *= 1.5;
        if (std::abs(r.value) < 1e-10 * std::abs(total.value) && k > 1) return total;
    }
    fail(ErrorKind::QuadratureFailure, "laplace_tail: truncation point not reached");
}

} // namespace

double green_radial(const GreenSpec& g, double t, double r) {
    check_spec(g);
    require(t > 0.0, ErrorKind::InvalidArgument, "green: t > 0");
    switch (g.d) {
    case 1:
        return r <= t ? 0.5 : 0.0;
    case 2:
        require(r != t, ErrorKind::LightConeSingularity, "green: d = 2 on the light cone");
        return r < t ? 1.0 / (2.0 * kPi * std::sqrt(t * t - r * r)) : 0.0;
    default: {
        require(g.eta > 0.0, ErrorKind::PointwiseUndefined, "green: d = 3 needs eta > 0");
        const double eta = g.eta;
        const double pre = std::pow(2.0 * kPi * eta, -1.5);
        if (r * t < 1e-8 * eta) return t * pre * std::exp(-(t * t + r * r) / (2.0 * eta));
        // (eta / 2r) (2 pi eta)^{-3/2} [exp(-(r-t)^2/2eta) - exp(-(r+t)^2/2eta)]
        return eta / (2.0 * r) * pre * std::exp(-(r - t) * (r - t) / (2.0 * eta)) * -std::expm1(-2.0 * r * t / eta);
    }
    }
}

double green_eval(const GreenSpec& g, double t, const Point& x) {
    require(static_cast<int>(x.size()) == g.d, ErrorKind::DimensionMismatch, "green: point dimension");
    return green_radial(g, t, norm(x));
}

double green_eval(const GreenSpec& g, double t, double x) { return green_eval(g, t, Point{x}); }

double green_fourier(double t, double rho) {
    require(t > 0.0, ErrorKind::InvalidArgument, "green_fourier: t > 0");
    if (rho == 0.0) return t;
    return std::sin(rho * t) / rho;
}

double green_mass(const GreenSpec& g, double t) {
    check_spec(g);
    switch (g.d) {
    case 1:
        return quad::gk([&](double x) { return green_radial(g, t, std::abs(x)); }, -t, t).value;
    case 2:
        // r = t sin(phi): r dr (t^2 - r^2)^{-1/2} = t sin(phi) dphi
        return quad::gk([&](double phi) { return t * std::sin(phi); }, 0.0, 0.5 * kPi).value;
    default: {
        const double w = 12.0 * std::sqrt(g.eta);
        auto f = [&](double r) { return 4.0 * kPi * r * r * green_radial(g, t, r); };
        return quad::gk_split(f, 0.0, t + w, {std::max(0.0, t - w), t}, 1e-12).value;
    }
    }
}

double heat_kernel(int d, double t, const Point& x) {
    require(t > 0.0, ErrorKind::InvalidArgument, "heat_kernel: t > 0");
    require(static_cast<int>(x.size()) == d, ErrorKind::DimensionMismatch, "heat_kernel: point dimension");
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::pow(2.0 * kPi * t, -0.5 * d) * std::exp(-r2 / (2.0 * t));
}

double heat_kernel(int d, double t, double x) {
    Point p(d, 0.0);
    p[0] = x;
    return heat_kernel(d, t, p);
}

SubordinationResult subordination_check(double lambda, const Point& x, int d) {
    require(lambda > 0.0, ErrorKind::InvalidArgument, "subordination: lambda > 0");
    require(d == 1 || d == 2, ErrorKind::InvalidArgument, "subordination: d in {1,2}");
    require(static_cast<int>(x.size()) == d, ErrorKind::DimensionMismatch, "subordination: point dimension");
    const double r = norm(x);
    require(!(d == 2 && r == 0.0), ErrorKind::Divergent,
            "subordination: d = 2 at x = 0, both transforms diverge logarithmically");
    SubordinationResult out;
    const GreenSpec g{d, 0.0};
    if (d == 1) {
        auto f = [&](double t) { return std::exp(-lambda * t) * green_radial(g, t, r); };
        const quad::Result q = laplace_tail(f, lambda, r, 1e-12);
        out.lhs = q.value;
        out.lhs_err = q.error;
    } else {
        // t = r cosh(u) removes the light-cone singularity
        auto f = [&](double u) { return std::exp(-lambda * r * std::cosh(u)) / (2.0 * kPi); };
        const double umax = std::acosh(std::max(1.0, 40.0 / (lambda * r)));
        const quad::Result q = quad::gk(f, 0.0, std::max(umax, 1.0), 1e-13);
        out.lhs = q.value;
        out.lhs_err = q.error;
    }
    // heat side with t = s^2
    auto h = [&](double s) {
        if (s == 0.0) return 0.0;
        const double t = s * s;
        return 0.5 * std::exp(-0.5 * lambda * lambda * t) * heat_kernel(d, t, x) * 2.0 * s;
    };
    const quad::Result q = laplace_tail(h, 0.5 * lambda * lambda, 0.0, 1e-12);
    out.rhs = q.value;
    out.rhs_err = q.error;
    return out;
}

bool green_scaling_check(const GreenSpec& g, double t, const Point& x) {
    require(g.d == 1 || g.d == 2, ErrorKind::InvalidArgument, "scaling: d in {1,2}");
    Point y(x);
    for (double& v : y) v /= t;
    const double lhs = green_eval(g, t, x);
    const double rhs = std::pow(t, -(g.d - 1)) * green_eval(g, 1.0, y);
    return std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs));
}

double green_fourier_quadrature(double t, double xi) {
    const GreenSpec g{1, 0.0};
    auto f = [&](double x) { return green_radial(g, t, std::abs(x)) * std::cos(xi * x); };
    return quad::gk(f, -t, t, 1e-13).value;
}

} // namespace stratlab
