#include "doctest.h"
#include "stratlab/wick.hpp"

#include <set>

using namespace stratlab;

TEST_CASE("pair-partition counts") {
    const std::uint64_t expected[] = {1, 3, 15, 105, 945, 10395};
    for (int n = 1; n <= 6; ++n) {
        CHECK(pairing_count(n) == expected[n - 1]);
        CHECK(enumerate_pairings(n).size() == expected[n - 1]);
    }
}

TEST_CASE("pairings are distinct perfect matchings in canonical order") {
    const auto all = enumerate_pairings(4);
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const auto& p : all) {
        CHECK(p.valid());
        for (const auto& [a, b] : p.pairs) {
            CHECK(a < b);
            CHECK(p.partner(a) == b);
            CHECK(p.partner(b) == a);
        }
        seen.insert(p.pairs);
    }
    CHECK(seen.size() == all.size());
    CHECK(all.front().pairs == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}, {5, 6}, {7, 8}});
}

TEST_CASE("Wick moments") {
    CHECK(wick_moment(Eigen::MatrixXd::Ones(4, 4)) == 3.0);
    CHECK(wick_moment(Eigen::MatrixXd::Ones(6, 6)) == 15.0);
    CHECK(wick_moment(Eigen::MatrixXd::Identity(4, 4)) == 0.0);
    // E X^4 = 3 s^4 for one Gaussian repeated four times
    CHECK(wick_moment(Eigen::MatrixXd::Constant(4, 4, 2.0)) == doctest::Approx(12.0));
    CHECK(wick_moment(Eigen::MatrixXd::Ones(3, 3)) == 0.0);
}

TEST_CASE("Monte Carlo cross-check is reproducible and consistent") {
    const auto a = wick_mc_crosscheck(Eigen::MatrixXd::Ones(4, 4), 20000, 7);
    const auto b = wick_mc_crosscheck(Eigen::MatrixXd::Ones(4, 4), 20000, 7);
    CHECK(a.mc == b.mc);
    CHECK(std::abs(a.mc - a.exact) <= 4.0 * a.stderr);
}
