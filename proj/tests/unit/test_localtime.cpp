#include "doctest.h"
#include "stratlab/error.hpp"
#include "stratlab/localtime.hpp"
#include "stratlab/quadrature.hpp"

#include <cmath>

using namespace stratlab;

namespace {
SpectralMeasure one_plus_cos() { return SpectralMeasure::atomic({{{0.0}, 1.0}, {{1.0}, 0.5}, {{-1.0}, 0.5}}, 1); }
SpectralMeasure constant_one() { return SpectralMeasure::atomic({{{0.0}, 1.0}}, 1); }
} // namespace

TEST_CASE("paths are reproducible per (seed, index) and have Brownian variance") {
    const auto a = simulate_path(1, 2.0, 16, 5, 3), b = simulate_path(1, 2.0, 16, 5, 3);
    CHECK(a.B == b.B);
    CHECK(a.beta == b.beta);
    CHECK(a.B.size() == 33);
    CHECK(a.B[0] == 0.0);
    CHECK(simulate_path(1, 2.0, 16, 5, 4).B != a.B);
    double s = 0.0;
    const int m = 4000;
    for (int i = 0; i < m; ++i) {
        const auto p = simulate_path(1, 2.0, 8, 11, i);
        s += p.B.back() * p.B.back();
    }
    // E B(t)^2 = t; Var B(t)^2 = 2 t^2
    CHECK(std::abs(s / m - 2.0) < 4.0 * std::sqrt(8.0 / m));
}

TEST_CASE("diagonal bands") {
    for (double a0 : {0.3, 0.6}) {
        const double h = 0.05;
        const double q = quad::power_singular([&](double u) { return 2 * (h - u); }, a0, h, 1e-13).value;
        CHECK(band_time_only(h, a0) == doctest::Approx(q).epsilon(1e-12));
        CHECK(band_time_frac(h, 1.7, 1e-9, a0) == doctest::Approx(std::pow(1.7, -a0) * q).epsilon(1e-6));
    }
    // 2 ∫_0^h (h-u) E Re(theta u + i sqrt(u) Z)^{-a0} du at 30 digits
    CHECK(band_complex(0.1, 2.0, 0.5) == doctest::Approx(0.029058018187142419).epsilon(1e-8));
    CHECK(band_complex(0.05, 1.0, 0.3) == doctest::Approx(0.0055601257200378193).epsilon(1e-8));
    CHECK(band_time_frac(0.05, 1.0, 1.0, 0.5) <= band_beta_only(0.05, 1.0, 0.5));
}

TEST_CASE("constant covariance reduces the functionals to time integrals") {
    const auto p = simulate_path(1, 1.5, 32, 2, 0);
    CHECK(hamiltonian_plain(p, constant_one(), 0.0) == doctest::Approx(1.5 * 1.5).epsilon(1e-13));
    const auto fine = simulate_path(1, 1.0, 512, 2, 0);
    const double exact = 2.0 / (0.5 * 1.5);
    CHECK(hamiltonian_time_only(fine, 0.5, constant_one(), 0.0) == doctest::Approx(exact).epsilon(5e-3));
}

TEST_CASE("complex functional: reference, cumulative and vectorized kernels agree") {
    const auto p = simulate_path(1, 2.0, 48, 9, 1);
    const auto z = hamiltonian_complex(p, 2.0, 0.5, one_plus_cos());
    CHECK(std::abs(z.imag()) <= 1e-10 * std::abs(z.real()));
    std::vector<double> a, b;
    complex_cumulative_serial(p, 2.0, 0.5, one_plus_cos(), 1, a);
    complex_cumulative_fast(p, 2.0, 0.5, one_plus_cos(), 1, b);
    REQUIRE(a.size() == 49);
    CHECK(a.back() == doctest::Approx(z.real()).epsilon(1e-11));
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-9));
    complex_cumulative_serial(p, 2.0, 0.5, one_plus_cos(), 2, a);
    complex_cumulative_fast(p, 2.0, 0.5, one_plus_cos(), 2, b);
    REQUIRE(a.size() == 25);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] == doctest::Approx(a[k]).epsilon(1e-9));
}

TEST_CASE("ensemble means: backends agree and positivity holds") {
    const auto e = simulate_paths(1, 1.0, 16, 512, 4);
    const auto s = complex_mean(e, 1.0, 0.3, one_plus_cos(), 0.0, Backend::Serial);
    const auto q = complex_mean(e, 1.0, 0.3, one_plus_cos(), 0.0, Backend::Parallel);
    CHECK(s.value == q.value);
    CHECK(s.stderr == q.stderr);
    CHECK(s.value.real() >= -3 * s.stderr);
    CHECK(std::abs(s.value.imag()) <= 3 * s.stderr);
}

TEST_CASE("mutual local time and dominations") {
    const auto p1 = simulate_path(1, 1.0, 32, 6, 0), p2 = simulate_path(1, 1.0, 32, 6, 1);
    const auto g = one_plus_cos();
    CHECK(mutual_local_time(p1, p2, g, 0.1) == doctest::Approx(mutual_local_time(p2, p1, g, 0.1)).epsilon(1e-13));
    const double tf = hamiltonian_time_frac(p1, 1.5, 1.0, 0.5, g, 0.1);
    CHECK(tf <= std::pow(1.5, -0.5) * hamiltonian_time_only(p1, 0.5, g, 0.1));
    CHECK(tf <= hamiltonian_beta_only(p1, 1.0, 0.5, g, 0.1));
    CHECK(tf > 0.0);
}

TEST_CASE("representation: left-hand side and a small Monte Carlo run") {
    double err = 0.0;
    // (1/8) ∫_0^∞ v^{-1/2} (v + sin v) e^{-2v} dv at 30 digits
    CHECK(representation_lhs_n1(2.0, one_plus_cos(), 0.5, &err) == doctest::Approx(0.073207159235139893).epsilon(1e-9));
    CHECK(err < 1e-8);
    const auto r = representation_check_n1(2.0, one_plus_cos(), 0.5, 512, 3, 128);
    CHECK(std::abs(r.rhs - r.lhs) <= 3 * r.stderr + r.quad_tolerance);
    CHECK(r.horizon > 0.0);
    CHECK_THROWS_AS(representation_check_n1(2.0, SpectralMeasure::dirac(), 0.5, 512, 3, 128), Error);
    CHECK_THROWS_AS(representation_check_n1(2.0, one_plus_cos(), 0.5, 16, 3, 128), Error);
}

TEST_CASE("kernel chain holds with zero exact failures") {
    const auto rep = kernel_chain_check(chain_samples(100000, 1), 1.3, 0.4);
    CHECK(rep.samples == 100000);
    CHECK(rep.holds());
}

TEST_CASE("exponential-moment trend is deterministic") {
    TrendSpec ts;
    ts.measure = one_plus_cos();
    ts.eps = 0.0;
    ts.m = 256;
    ts.K = 8;
    const auto a = exp_moment_trend(ts), b = exp_moment_trend(ts);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].value > 0.0);
    }
}
