#include "doctest.h"
#include "stratlab/strat_bound.hpp"

#include <cmath>

using namespace stratlab;

namespace {
SpectralMeasure one_plus_cos() { return SpectralMeasure::atomic({{{0.0}, 1.0}, {{1.0}, 0.5}, {{-1.0}, 0.5}}, 1); }
} // namespace

TEST_CASE("first lemma: closed forms and an independent reference") {
    const auto d = SpectralMeasure::dirac();
    for (double a0 : {0.2, 0.5, 0.8})
        for (double th : {0.5, 3.0})
            CHECK(lemma_a1(th, d, a0) ==
                  doctest::Approx(0.5 * std::tgamma(1 - a0) * std::pow(th, a0 - 1)).epsilon(1e-9));
    // Gamma(a0)^{-1} ∫ l^{a0-1} [(th+l)^{-2} + ((th+l)^2+1)^{-1}] dl at 30 digits
    CHECK(lemma_a1(2.0, one_plus_cos(), 0.5) == doctest::Approx(0.58565727388111914).epsilon(1e-9));
    CHECK(lemma_a1(1.0, one_plus_cos(), 0.3) == doctest::Approx(1.4407688124930257).epsilon(1e-9));
    CHECK(lemma_a1_oscillatory(2.0, one_plus_cos(), 0.5) == doctest::Approx(0.58565727388111914).epsilon(1e-6));
}

TEST_CASE("lambda ranges split the first lemma additively") {
    const auto d = SpectralMeasure::dirac();
    const double full = lemma_a1(1.5, d, 0.4);
    const double lo = lemma_a1(1.5, d, 0.4, {0.0, 3.0}), hi = lemma_a1(1.5, d, 0.4, {3.0, INFINITY});
    CHECK(lo + hi == doctest::Approx(full).epsilon(1e-9));
}

TEST_CASE("second lemma: closed form vs direct quadrature") {
    const auto d = SpectralMeasure::dirac();
    for (double th : {0.5, 2.0})
        CHECK(lemma_a2_closed(th, d, 0.5) ==
              doctest::Approx(0.25 * std::tgamma(0.5) * std::pow(th, -2.5)).epsilon(1e-9));
    for (const auto& m : {d, SpectralMeasure::riesz(0.5, 1.0, 1), one_plus_cos()}) {
        const auto l = lemma_a2(1.0, m, 0.5);
        CHECK(l.closed == doctest::Approx(l.direct).epsilon(1e-3));
    }
}

TEST_CASE("decay rate in theta is alpha0 + alpha - 4") {
    CHECK(lemma_a3_rate({4, 8, 16, 32}, SpectralMeasure::dirac(), 0.5) == doctest::Approx(-2.5).epsilon(1e-7));
    CHECK(lemma_a3_rate({4, 8, 16, 32}, SpectralMeasure::riesz(0.5, 1.0, 1), 0.3) ==
          doctest::Approx(-3.2).epsilon(1e-7));
}

TEST_CASE("certificates satisfy the structural rules for every configuration up to 2n = 8") {
    const auto nt = compute_norms(2.0, SpectralMeasure::dirac(), 0.5);
    for (int n = 1; n <= 4; ++n) {
        const std::vector<NormTriple> ns(2 * n, nt);
        for (int n1 = 0; n1 <= 2 * n; ++n1)
            for (const auto& p : enumerate_pairings(n)) {
                const auto c = theorem3_certificate(n1, 2 * n - n1, p, ns);
                CHECK(certificate_valid(c, n));
                CHECK(c.bound > 0.0);
                for (double alt : c.alternatives) CHECK(c.bound >= alt);
            }
    }
}

TEST_CASE("base-case certificates") {
    const auto nt = compute_norms(2.0, SpectralMeasure::dirac(), 0.5);
    const PairPartition p{{{1, 2}}};
    const auto left = theorem3_certificate(2, 0, p, {nt, nt});
    CHECK(left.q0 == std::vector<int>{1});
    REQUIRE(left.q1.size() == 1);
    CHECK(left.q1[0].index == 2);
    CHECK(left.bound == doctest::Approx(2.0 * nt.norm0 * nt.n1(kAnyPair)));
    CHECK(left.refined_bound == doctest::Approx(nt.norm0 * nt.n1(kAnyPair)));
    const auto split = theorem3_certificate(1, 1, p, {nt, nt});
    CHECK(split.q2.size() == 2);
    CHECK(split.bound == doctest::Approx(nt.n2(kAnyPair) * nt.n2(kAnyPair)));
    CHECK(to_record(split).find("Q2={1:(1,2),2:(1,2)}") != std::string::npos);
}

TEST_CASE("quadrature left-hand sides stay below the base-case bounds") {
    for (const auto& m : {SpectralMeasure::dirac(), SpectralMeasure::riesz(0.5, 1.0, 1)})
        for (auto which : {BaseCase::Split11, BaseCase::Left20, BaseCase::Right02}) {
            const auto dm = bound_domination_check(which, 2.0, m, 0.5);
            CHECK(dm.lhs > 0.0);
            CHECK(dm.lhs <= dm.bound * (1 + 1e-3));
        }
}
