#include "doctest.h"
#include "stratlab/error.hpp"
#include "stratlab/kernels.hpp"

#include <cmath>

using namespace stratlab;

namespace {
// |x|^{-alpha} constant of the Fourier transform of |xi|^{alpha-d} in R^d
double riesz_constant(double alpha, int d) {
    return std::pow(M_PI, 0.5 * d) * std::pow(2.0, alpha) * std::tgamma(0.5 * alpha) / std::tgamma(0.5 * (d - alpha));
}
} // namespace

TEST_CASE("Riesz constant matches the Fourier transform of a power") {
    for (double a : {0.3, 0.6, 0.9}) {
        const auto m = SpectralMeasure::riesz(a, 1.0, 1);
        CHECK(m.riesz_constant() == doctest::Approx(riesz_constant(a, 1)).epsilon(1e-9));
        CHECK(gamma_eval(m, 1.7) == doctest::Approx(riesz_constant(a, 1) * std::pow(1.7, -a)).epsilon(1e-9));
    }
    const auto m3 = SpectralMeasure::riesz(1.5, 1.0, 3);
    CHECK(m3.riesz_constant() == doctest::Approx(riesz_constant(1.5, 3)).epsilon(1e-8));
}

TEST_CASE("closed form and Fourier integral agree") {
    const auto r1 = SpectralMeasure::riesz(0.6, 1.0, 1);
    CHECK(gamma_transform(r1, 1.7) == doctest::Approx(gamma_eval(r1, 1.7)).epsilon(1e-7));
    const auto r3 = SpectralMeasure::riesz(1.5, 1.0, 3);
    CHECK(gamma_transform(r3, 1.7) == doctest::Approx(gamma_eval(r3, Point{1.7, 0, 0})).epsilon(1e-7));
}

TEST_CASE("mollified kernels") {
    const auto d = SpectralMeasure::dirac();
    for (double x : {0.0, 0.3, 1.1}) {
        const double eps = 0.05;
        CHECK(gamma_mollified(d, eps, x) ==
              doctest::Approx(std::exp(-x * x / (4 * eps)) / std::sqrt(4 * M_PI * eps)).epsilon(1e-12));
    }
    const auto r = SpectralMeasure::riesz(0.5, 1.0, 1);
    // converges to the unmollified kernel away from the origin
    CHECK(gamma_mollified(r, 1e-8, 2.0) == doctest::Approx(gamma_eval(r, 2.0)).epsilon(1e-4));
    // mollification lowers the peak but keeps it finite
    CHECK(std::isfinite(gamma_mollified(r, 0.01, 0.0)));
}

TEST_CASE("atomic measures act through the symmetrized cosine") {
    const auto a = SpectralMeasure::atomic({{{0.0}, 1.0}, {{1.0}, 0.5}, {{-1.0}, 0.5}}, 1);
    for (double x : {0.0, 0.4, 2.0}) CHECK(gamma_eval(a, x) == doctest::Approx(1.0 + std::cos(x)).epsilon(1e-15));
    CHECK_THROWS_AS(SpectralMeasure::atomic({{{1.0}, -1.0}}, 1), Error);
}

TEST_CASE("covariance matrices are positive semidefinite") {
    std::vector<Point> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(Point{-1.5 + 0.27 * i});
    CHECK(psd_min_ratio(SpectralMeasure::riesz(0.5, 1.0, 1), 0.01, pts) > -1e-10);
    CHECK(psd_min_ratio(SpectralMeasure::dirac(), 0.05, pts) > -1e-10);
}

TEST_CASE("Laplace representation of |u|^{-alpha0}") {
    for (double a0 : {0.2, 0.5, 0.8})
        for (double u : {0.1, 1.0, 4.0}) {
            const TimeKernel head{a0, 0.3, false}, tail{a0, 0.3, true};
            CHECK(time_kernel_eval(head, u) + time_kernel_eval(tail, u) ==
                  doctest::Approx(std::pow(u, -a0)).epsilon(1e-8));
            CHECK(time_kernel_closed(head, u) == doctest::Approx(time_kernel_eval(head, u)).epsilon(1e-9));
        }
    // independent reference value
    CHECK(time_kernel_eval({0.3, 0.2, false}, 0.7) == doctest::Approx(1.1089253431013226).epsilon(1e-10));
}

TEST_CASE("complex power: principal branch and Laplace quadrature") {
    const auto z = complex_power(0.5, 0.0, 1.0);
    CHECK(z.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(z.imag() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));
    const auto c = complex_power(0.4, 0.5, 1.2), q = complex_power_laplace(0.4, 0.5, 1.2);
    CHECK(std::abs(c - q) < 1e-9);
    for (double v : {-3.0, -0.1, 0.2, 5.0}) CHECK(complex_power(0.7, 0.3, v).real() > 0.0);
}

TEST_CASE("integrability conditions") {
    const auto d = SpectralMeasure::dirac();
    const auto dal = check_condition(d, 0.5, Condition::Dalang);
    CHECK(dal.finite);
    CHECK(dal.value == doctest::Approx(0.5).epsilon(1e-10));
    const auto st = check_condition(d, 0.5, Condition::Stratonovich);
    CHECK(st.value ==
          doctest::Approx(std::tgamma(0.25) / (2.0 * std::sqrt(M_PI) * std::tgamma(0.75))).epsilon(1e-9));
    // alpha + alpha0 >= 2 breaks the Stratonovich condition
    CHECK(check_condition(SpectralMeasure::riesz(0.9, 1.0, 1), 0.5, Condition::Stratonovich).finite);
    CHECK_FALSE(check_condition(SpectralMeasure::riesz(1.8, 1.0, 3), 0.5, Condition::Stratonovich).finite);
}
