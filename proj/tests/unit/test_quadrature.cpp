#include "doctest.h"
#include "stratlab/error.hpp"
#include "stratlab/quadrature.hpp"

#include <cmath>

using namespace stratlab;

TEST_CASE("gk integrates smooth functions on finite and infinite ranges") {
    CHECK(quad::gk([](double x) { return std::sin(x); }, 0.0, M_PI).value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(quad::gk([](double x) { return std::exp(-x); }, 0.0, INFINITY).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gk stays cheap on very short intervals") {
    long evals = 0;
    const double v = 1e-9;
    const auto r = quad::gk(
        [&](double x) {
            ++evals;
            return 1.0 + std::cos(x);
        },
        -v, v, 1e-10);
    CHECK(r.value == doctest::Approx(4e-9).epsilon(1e-14));
    CHECK(evals <= 21);
}

TEST_CASE("power_singular removes an algebraic endpoint singularity") {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        // ∫_0^1 u^{-p} du
        CHECK(quad::power_singular([](double) { return 1.0; }, p, 1.0).value ==
              doctest::Approx(1.0 / (1.0 - p)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(quad::power_singular([](double) { return 1.0; }, 1.0, 1.0), Error);
}

TEST_CASE("mellin_tail handles 1/x tails") {
    // ∫_0^∞ x^{s-1}/(1+x) dx = pi / sin(pi s)
    for (double s : {0.2, 0.5, 0.8}) {
        const auto r = quad::mellin_tail([](double x) { return 1.0 / (1.0 + x); }, s, 0.0, 1.0);
        CHECK(r.value == doctest::Approx(M_PI / std::sin(M_PI * s)).epsilon(1e-9));
    }
}

TEST_CASE("oscillatory tail with Wynn acceleration") {
    // ∫_0^∞ sin(x)/x dx = pi/2
    const auto r = quad::oscillatory_tail([](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(M_PI / 2).epsilon(1e-8));
}

TEST_CASE("gauss_legendre is exact for low-degree polynomials") {
    std::vector<double> x, w;
    quad::gauss_legendre(5, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 8);
    CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}
