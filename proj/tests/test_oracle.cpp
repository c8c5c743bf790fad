#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

#include <stdexcept>

using namespace latmean;
using latmean::testing::make_e5;

TEST_CASE("oracle lattices on the 5-point line") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    CHECK(oracle::oracle_lattices(whole, 0.3) ==
          std::vector<std::vector<PointId>>{{0, 2, 4}, {0, 3}, {1, 3}, {1, 4}});
    CHECK(oracle::oracle_lattices(whole, 0.2) ==
          std::vector<std::vector<PointId>>{{0, 1, 2, 3, 4}});
    CHECK(oracle::oracle_lattices(whole, 2.0) ==
          std::vector<std::vector<PointId>>{{0}, {1}, {2}, {3}, {4}});
}

TEST_CASE("oracle bounds on the 5-point line") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const auto [lo, hi] = oracle::oracle_bounds(whole, FnSpec::coordinate(0), 0.3);
    CHECK(lo == 0.375);
    CHECK(hi == 0.625);
    const auto [cl, ch] = oracle::oracle_bounds(whole, FnSpec::constant(4.0), 0.3);
    CHECK(cl == 4.0);
    CHECK(ch == 4.0);
    const auto [gl, gh] = oracle::oracle_bounds(whole, FnSpec::coordinate(0), 0.2);
    CHECK(gl == 0.5);
    CHECK(gh == 0.5);
}

TEST_CASE("oracle rejects large instances") {
    const MetricSpace big = latmean::testing::make_line(21, 1.0);
    CHECK_THROWS_AS(oracle::oracle_lattices(Subspace(big), 0.5), std::invalid_argument);
}
