#include "doctest.h"
#include "stratlab/asympt.hpp"
#include "stratlab/error.hpp"
#include "stratlab/variational.hpp"

#include <cmath>

using namespace stratlab;

TEST_CASE("Mittag-Leffler rates against high-precision sums") {
    const auto a = mittag_leffler_rate(1.0, 2.0, {10, 100, 1000});
    CHECK(a[0].second == doctest::Approx(1.4246326863922754).epsilon(1e-11));
    CHECK(a[1].second == doctest::Approx(1.7589610428244274).epsilon(1e-11));
    CHECK(a[2].second == doctest::Approx(1.9054333947821975).epsilon(1e-11));
    CHECK(mittag_leffler_log(3.0, 2.0, 1000) / std::sqrt(1000.0) == doctest::Approx(3.3608229654070669).epsilon(1e-11));
    for (double b : {10.0, 1000.0}) CHECK(mittag_leffler_log(2.0, 1.0, b) / b == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log of the upper incomplete Gamma function") {
    CHECK(log_upper_gamma(100.5, 300) == doctest::Approx(267.92688828686666).epsilon(1e-12));
    CHECK(log_upper_gamma(2.5, 1000) == doctest::Approx(-989.63686745690053).epsilon(1e-12));
    CHECK(log_upper_gamma(0.5, 0.1) == doctest::Approx(0.14881861944873435).epsilon(1e-12));
    CHECK(log_upper_gamma(60, 10) == doctest::Approx(184.53382886144949).epsilon(1e-12));
}

TEST_CASE("Gamma tail exponent") {
    double prev = INFINITY;
    for (double eta : {4.0, 1.0, 0.5, 0.25}) {
        const double v = gamma_tail_negligibility(eta, 200, 0.5, 1.0);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(gamma_tail_negligibility(0.5, 200, 1.0, 2.0) == doctest::Approx(-8.0 - std::log(2.0) / 200).epsilon(1e-10));
}

TEST_CASE("rate predictors") {
    RateInputs r{1.0, 0.5, 1, 0.63, 0.0};
    const auto p = predict_logEu_rate(r);
    CHECK(p.exponent == doctest::Approx(1.25));
    CHECK_FALSE(p.conjecture);
    CHECK(predict_logEup_rate(3, r).conjecture);
    CHECK_THROWS_AS(predict_logEu_rate(RateInputs{1.0, 1.0, 1, 0.63, 0.0}), Error);
    CHECK_THROWS_AS(predict_logEu_rate(RateInputs{1.2, 0.9, 1, 0.63, 0.0}), Error);
    CHECK_THROWS_AS(predict_logEu_rate(RateInputs{1.5, 0.3, 1, 0.63, 0.0}), Error);
}

TEST_CASE("both routes give the same moment base") {
    for (double a : {0.5, 1.0})
        for (double M : {0.3, 0.63, 2.0}) {
            RateInputs r{a, 0.5, 1, M, 0.0};
            r.E0 = relation_E0_M(M, a);
            CHECK(moment_base_E0(r) == doctest::Approx(moment_base_M(r)).epsilon(1e-13));
            for (int n = 1; n <= 6; ++n)
                CHECK(predict_moment_prefactor(n, r) == doctest::Approx(predict_moment_prefactor_M(n, r)).epsilon(1e-12));
        }
}

TEST_CASE("small-n growth exponent") {
    const auto s = small_n_consistency(SpectralMeasure::dirac(), 0.5, {0.5, 1.0, 2.0});
    CHECK(s.expected_exponent == 2.5);
    CHECK(s.fitted_exponent == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(s.A == doctest::Approx(std::tgamma(0.5) / (2 * std::tgamma(3.5))).epsilon(1e-6));
    CHECK(s.informational);
}
