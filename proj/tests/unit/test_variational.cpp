#include "doctest.h"
#include "stratlab/error.hpp"
#include "stratlab/variational.hpp"

#include <cmath>

using namespace stratlab;

TEST_CASE("fields are normalized slice by slice") {
    const GridConfig g;
    const auto f = field_from(g, [](double s, double x) { return std::exp(-x * x * (1 + s)); });
    CHECK(f.max_normalization_error() < 1e-12);
    CHECK(f.checksum() == field_from(g, [](double s, double x) { return std::exp(-x * x * (1 + s)); }).checksum());
}

TEST_CASE("flat field under constant covariance") {
    GridConfig pc;
    pc.boundary = Boundary::Periodic;
    pc.L = 2.0;
    pc.hx = 0.1;
    pc.S = 4;
    const auto one = SpectralMeasure::atomic({{{0.0}, 1.0}}, 1);
    const auto flat = field_from(pc, [](double, double) { return 1.0; });
    CHECK(eval_functional(Functional::E0, flat, one, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eval_functional(Functional::M, flat, one, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solver: optimum dominates trials and values increase") {
    const auto d = SpectralMeasure::dirac();
    const GridConfig g;
    const VariationalProblem p(Functional::M, d, 0.5, 0.0, g);
    const auto sol = solve(p, gaussian_init(p));
    CHECK(sol.converged);
    CHECK(sol.field.max_normalization_error() < 1e-10);
    for (std::size_t i = 1; i < sol.history.size(); ++i) CHECK(sol.history[i] >= sol.history[i - 1]);
    for (const auto& t : trial_library()) CHECK(p.value(field_from(g, t.f)) <= sol.value);
    CHECK(trial_library().size() == 12);
}

TEST_CASE("truncated-kernel constants increase as delta shrinks") {
    const auto d = SpectralMeasure::dirac();
    double prev = -INFINITY;
    for (double delta : {0.5, 0.25, 0.125}) {
        const double v = solve(Functional::Edelta, d, 0.5, delta, GridConfig{}).value;
        CHECK(v > prev);
        prev = v;
    }
    CHECK(solve(Functional::E0, d, 0.5, 0.0, GridConfig{}).value > prev);
}

TEST_CASE("covariance rescaling") {
    const auto rc = rescale_covariance_check(SpectralMeasure::dirac(), 0.5, GridConfig{});
    CHECK(rc.predicted_ratio == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
    CHECK(rc.ratio == doctest::Approx(rc.predicted_ratio).epsilon(1e-2));
}

TEST_CASE("relations between M and E0") {
    for (double a : {0.5, 1.0, 1.5})
        for (double M : {0.2, 1.0, 3.0}) CHECK(relation_M_E0(relation_E0_M(M, a), a) == doctest::Approx(M).epsilon(1e-13));
}

TEST_CASE("unnormalized input is rejected") {
    const GridConfig g;
    const VariationalProblem p(Functional::M, SpectralMeasure::dirac(), 0.5, 0.0, g);
    FieldGrid f = FieldGrid::from(g);
    for (double& v : f.g) v = 1.0;
    CHECK_THROWS_AS(p.value(f), Error);
}
