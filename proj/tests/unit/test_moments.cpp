#include "doctest.h"
#include "stratlab/error.hpp"
#include "stratlab/moments.hpp"

#include <cmath>

using namespace stratlab;

namespace {
SpectralMeasure one_plus_cos() { return SpectralMeasure::atomic({{{0.0}, 1.0}, {{1.0}, 0.5}, {{-1.0}, 0.5}}, 1); }
double dirac_es2(double t, double a0) { return std::pow(t, 3 - a0) * std::tgamma(1 - a0) / (2 * std::tgamma(4 - a0)); }
} // namespace

TEST_CASE("sine integral") {
    CHECK(sine_integral(M_PI, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sine_integral(2 * M_PI, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("E S_2 closed forms") {
    for (double a0 : {0.3, 0.5, 0.7})
        for (double t : {0.5, 1.0, 2.0})
            CHECK(s2_expectation_reduced(t, SpectralMeasure::dirac(), a0) ==
                  doctest::Approx(dirac_es2(t, a0)).epsilon(1e-7));
    const auto one = SpectralMeasure::atomic({{{0.0}, 1.0}}, 1);
    CHECK(s2_expectation_reduced(1.0, one, 0.5) == doctest::Approx(1.0 / (1.5 * 2.5 * 3.5)).epsilon(1e-11));
}

TEST_CASE("E S_2 for gamma = 1 + cos against independent quadrature") {
    // ∫_0^t v^{-a0} (v + sin v) (t - v)^2 / 2 dv, evaluated at 30 digits
    struct Row {
        double a0, t, value;
    };
    const Row rows[] = {{0.3, 0.5, 0.0090293852478893477}, {0.3, 1.0, 0.11611144650438052},
                        {0.5, 0.5, 0.013426356999200578},  {0.5, 1.0, 0.15048770526104162},
                        {0.7, 0.5, 0.020523989460804077},  {0.7, 1.0, 0.20051358797098588}};
    for (const auto& r : rows) {
        CHECK(s2_expectation_reduced(r.t, one_plus_cos(), r.a0) == doctest::Approx(r.value).epsilon(1e-10));
        MomentSpec s;
        s.t = r.t;
        s.alpha0 = r.a0;
        s.measure = one_plus_cos();
        CHECK(s2n_expectation_direct(s).value == doctest::Approx(r.value).epsilon(1e-9));
    }
}

TEST_CASE("direct and reduced routes agree for Riesz kernels") {
    const auto r = SpectralMeasure::riesz(0.6, 1.0, 1);
    MomentSpec s;
    s.measure = r;
    CHECK(s2n_expectation_direct(s).value == doctest::Approx(s2_expectation_reduced(1.0, r, 0.5)).epsilon(1e-6));
}

TEST_CASE("scaling in t") {
    for (double a : {0.4, 0.8}) {
        const auto r = SpectralMeasure::riesz(a, 1.0, 1);
        const double ratio = s2_expectation_reduced(2.0, r, 0.5) / s2_expectation_reduced(1.0, r, 0.5);
        CHECK(ratio == doctest::Approx(std::pow(2.0, 4 - a - 0.5)).epsilon(1e-6));
    }
}

TEST_CASE("odd orders, n = 2 and Monte Carlo") {
    MomentSpec s;
    s.measure = one_plus_cos();
    CHECK(stratonovich_expectation(5, s).value == 0.0);
    s.n = 2;
    const auto q = s2n_expectation_direct(s);
    CHECK(q.value > 0.0);
    CHECK(std::isfinite(q.error_estimate));
    s.n = 3;
    CHECK_THROWS_AS(s2n_expectation_direct(s), Error);

    MomentSpec mc;
    mc.measure = SpectralMeasure::dirac();
    mc.method = MomentMethod::MonteCarlo;
    mc.budget = 50000;
    mc.delta = 4e-3;
    mc.eps = 1.6e-5;
    const auto v = s2n_expectation_direct(mc);
    CHECK(std::abs(v.value - dirac_es2(1.0, 0.5)) <= 4 * v.stderr + v.bias_estimate);
}

TEST_CASE("L2 norm of the first chaos") {
    MomentSpec s;
    s.measure = SpectralMeasure::dirac();
    CHECK(l2_norm_chaos(s).value == doctest::Approx(1.0 / (0.5 * 1.5 * 2.5)).epsilon(1e-9));
}
