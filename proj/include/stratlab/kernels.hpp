#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace stratlab {

using Point = std::vector<double>;

struct RieszRadial {
    double alpha = 0.5;
    double c = 1.0;
    int d = 1;
};

// mu = Lebesgue/(2 pi) on the line, gamma = delta_0
struct DiracSpace {};

struct Atom {
    Point xi;
    double w = 0.0;
};

// Atoms act through cos(xi.x), i.e. the measure is read as its symmetrization.
struct FiniteAtomic {
    std::vector<Atom> atoms;
    int d = 1;
};

// mu(dxi) = f(|xi|) 1{|xi| <= R} dxi / (2 pi)^d
struct TruncatedRadial {
    std::function<double(double)> density;
    double R = 1.0;
    int d = 1;
};

class SpectralMeasure {
public:
    using Variant = std::variant<RieszRadial, DiracSpace, FiniteAtomic, TruncatedRadial>;

    SpectralMeasure() : v_(DiracSpace{}) {}

    static SpectralMeasure riesz(double alpha, double c, int d);
    static SpectralMeasure dirac();
    static SpectralMeasure atomic(std::vector<Atom> atoms, int d = 1);
    static SpectralMeasure truncated(std::function<double(double)> density, double R, int d);

    const Variant& variant() const { return v_; }
    int dim() const;
    std::string name() const;
    bool is_dirac() const { return std::holds_alternative<DiracSpace>(v_); }
    bool is_riesz() const { return std::holds_alternative<RieszRadial>(v_); }
    bool is_atomic() const { return std::holds_alternative<FiniteAtomic>(v_); }
    bool is_zero() const;

    // homogeneity exponent: alpha for Riesz, 1 for DiracSpace; throws otherwise
    double alpha() const;
    // c' in gamma(x) = c' |x|^{-alpha} (Riesz only)
    double riesz_constant() const { return c_prime_; }

    // ∫ F(|xi|) mu(dxi); `scales` marks radii where F changes behaviour (default {1})
    double radial_integral(const std::function<double(double)>& F, double tol = 1e-10,
                           std::vector<double> scales = {}) const;

private:
    explicit SpectralMeasure(Variant v);
    Variant v_;
    double c_prime_ = 0.0;
};

double gamma_eval(const SpectralMeasure& m, const Point& x);
double gamma_eval(const SpectralMeasure& m, double x);

// gamma(x) through the Fourier integral rather than the closed form (radial measures)
double gamma_transform(const SpectralMeasure& m, double r, double tol = 1e-9);

double gamma_mollified(const SpectralMeasure& m, double eps, const Point& x);
double gamma_mollified(const SpectralMeasure& m, double eps, double x);

// mean of exp(i xi.x) over the unit sphere of R^d at |xi| = rho, |x| = r
double angular_average(int d, double z);

// smallest eigenvalue of [gamma_eps(x_i - x_j)] divided by the largest diagonal entry
double psd_min_ratio(const SpectralMeasure& m, double eps, const std::vector<Point>& pts);

struct TimeKernel {
    double alpha0 = 0.5;
    double delta = 0.0;
    bool tail = false; // false: lambda in [0, 1/delta]; true: [1/delta, inf)
};

// Laplace-range quadrature (closed form when delta = 0)
double time_kernel_eval(const TimeKernel& k, double u);
// same quantity through the regularized incomplete gamma function
double time_kernel_closed(const TimeKernel& k, double u);

std::complex<double> complex_power(double alpha0, double u, double v);
// Gamma(a0)^{-1} ∫_0^∞ exp(-lambda (u + i v)) lambda^{a0-1} dlambda by oscillatory quadrature
std::complex<double> complex_power_laplace(double alpha0, double u, double v, double tol = 1e-10);

enum class Condition { Stratonovich, Skorohod, Parabolic, Dalang };

struct ConditionResult {
    bool finite = false;
    double value = 0.0;
    double p = 0.0;
};

double condition_exponent(Condition which, double alpha0);
ConditionResult check_condition(const SpectralMeasure& m, double alpha0, Condition which);

} // namespace stratlab
