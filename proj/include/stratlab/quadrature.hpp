#pragma once

#include <functional>
#include <vector>

namespace stratlab::quad {

using Fn = std::function<double(double)>;

struct Result {
    double value = 0.0;
    double error = 0.0;
};

// Adaptive Gauss-Kronrod (21 point). b may be +inf.
Result gk(const Fn& f, double a, double b, double tol = 1e-11, unsigned max_depth = 18);

// Double-exponential rule; tolerates integrable endpoint singularities.
Result tanh_sinh(const Fn& f, double a, double b, double tol = 1e-11);

// ∫_a^∞ f; suited to slow algebraic decay.
Result exp_sinh(const Fn& f, double a, double tol = 1e-11);

// ∫_a^b split at the given interior points, each piece by gk.
Result gk_split(const Fn& f, double a, double b, const std::vector<double>& cuts, double tol = 1e-11);

// ∫_0^b f(u) u^{-p} du with p < 1, via u = w^{1/(1-p)}.
Result power_singular(const Fn& f, double p, double b, double tol = 1e-11);

// ∫_a^∞ f(x) x^{s-1} dx with 0 < s < 1 and a >= 0; the range past `scale` is mapped so that
// integrands decaying like 1/x stay regular.
Result mellin_tail(const Fn& f, double s, double a, double scale, double tol = 1e-11);

// ∫_a^b summed over consecutive half-periods of the given length.
Result half_periods(const Fn& f, double a, double b, double half_period, double tol = 1e-12);

// ∫_a^∞ of an oscillatory integrand: half-period partial sums with Wynn epsilon.
Result oscillatory_tail(const Fn& f, double a, double half_period, double tol = 1e-11,
                        int max_terms = 400);

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& partial_sums, double* err = nullptr);

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace stratlab::quad
