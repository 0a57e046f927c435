#include "doctest.h"
#include "stratlab/error.hpp"
#include "stratlab/wavegreen.hpp"

#include <cmath>

using namespace stratlab;

TEST_CASE("Green kernel profiles") {
    const GreenSpec g1{1, 0.0}, g2{2, 0.0};
    CHECK(green_eval(g1, 1.0, 0.3) == 0.5);
    CHECK(green_eval(g1, 1.0, 1.3) == 0.0);
    CHECK(green_eval(g2, 2.0, Point{0.6, 0.8}) ==
          doctest::Approx(1.0 / (2 * M_PI * std::sqrt(4.0 - 1.0))).epsilon(1e-14));
    CHECK(green_eval(g2, 1.0, Point{0.9, 0.9}) == 0.0);
    CHECK(green_fourier(2.0, 0.0) == 2.0);
    CHECK(green_fourier(2.0, 1.5) == doctest::Approx(std::sin(3.0) / 1.5).epsilon(1e-15));
}

TEST_CASE("mass equals t") {
    for (double t : {0.5, 1.0, 2.0}) {
        CHECK(green_mass({1, 0.0}, t) == doctest::Approx(t).epsilon(1e-12));
        CHECK(std::abs(green_mass({2, 0.0}, t) - t) < 1e-8);
        CHECK(std::abs(green_mass({3, 1e-3}, t) - t) < 1e-3);
    }
    CHECK_THROWS_AS(green_eval({3, 0.0}, 1.0, Point{0.1, 0, 0}), Error);
}

TEST_CASE("heat kernel is a probability density") {
    CHECK(heat_kernel(1, 2.0, 0.0) == doctest::Approx(1.0 / std::sqrt(4 * M_PI)).epsilon(1e-15));
    CHECK(heat_kernel(2, 1.0, Point{0.0, 0.0}) == doctest::Approx(1.0 / (2 * M_PI)).epsilon(1e-15));
}

TEST_CASE("subordination identity against closed forms") {
    for (double lam : {0.5, 1.0, 2.0})
        for (double x : {0.0, 0.5}) {
            const auto s = subordination_check(lam, Point{x}, 1);
            const double exact = std::exp(-lam * x) / (2 * lam);
            CHECK(s.lhs == doctest::Approx(exact).epsilon(1e-10));
            CHECK(s.rhs == doctest::Approx(exact).epsilon(1e-8));
        }
    const auto s2 = subordination_check(1.3, Point{0.4, 0.2}, 2);
    const double k0 = std::cyl_bessel_k(0.0, 1.3 * std::hypot(0.4, 0.2)) / (2 * M_PI);
    CHECK(s2.lhs == doctest::Approx(k0).epsilon(1e-10));
    CHECK(s2.rhs == doctest::Approx(k0).epsilon(1e-8));
    try {
        subordination_check(1.0, Point{0.0, 0.0}, 2);
        FAIL("expected Divergent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Divergent);
    }
}

TEST_CASE("scaling and Fourier transform") {
    CHECK(green_scaling_check({1, 0.0}, 2.5, Point{0.7}));
    CHECK(green_scaling_check({2, 0.0}, 0.4, Point{0.1, 0.2}));
    for (double xi : {0.0, 0.5, 4.0})
        CHECK(green_fourier_quadrature(1.5, xi) == doctest::Approx(green_fourier(1.5, xi)).epsilon(1e-11));
}
