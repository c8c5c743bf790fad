#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "latmean/function.hpp"

#include <stdexcept>

using namespace latmean;
using latmean::testing::make_e5;

TEST_CASE("eval variants") {
    const MetricSpace e5 = make_e5();
    CHECK(eval(FnSpec::constant(3.5), e5, 0) == 3.5);
    CHECK(eval(FnSpec::coordinate(0), e5, 2) == 0.5);
    CHECK(eval(indicator({0, 1, 2}), e5, 3) == 0.0);
    CHECK(eval(indicator({0, 1, 2}), e5, 1) == 1.0);
    CHECK(eval(FnSpec::polynomial(0, {1.0, 2.0, 3.0}), e5, 2) == 2.75);
    CHECK(eval(FnSpec::table({5, 6, 7, 8, 9}), e5, 4) == 9.0);
}

TEST_CASE("eval error paths") {
    const MetricSpace e5 = make_e5();
    CHECK_THROWS_AS(eval(FnSpec::table({1.0, 2.0}), e5, 3), std::invalid_argument);
    CHECK_THROWS_AS(eval(FnSpec::coordinate(1), e5, 0), std::out_of_range);
    CHECK_THROWS_AS(eval(FnSpec::constant(0.0), e5, 9), std::out_of_range);
}

TEST_CASE("indicator edge cases") {
    const MetricSpace e5 = make_e5();
    const FnSpec empty = indicator({});
    const FnSpec full = indicator({0, 1, 2, 3, 4});
    for (PointId p = 0; p < 5; ++p) {
        CHECK(eval(empty, e5, p) == 0.0);
        CHECK(eval(full, e5, p) == 1.0);
    }
    const FnSpec front = indicator({0, 1, 2});
    const double expected[5] = {1, 1, 1, 0, 0};
    for (PointId p = 0; p < 5; ++p) CHECK(eval(front, e5, p) == expected[p]);
}

TEST_CASE("combine identities") {
    const MetricSpace e5 = make_e5();
    const FnSpec f = FnSpec::coordinate(0);
    const FnSpec same = combine(1.0, f, 0.0, FnSpec::constant(42.0));
    const FnSpec neg = combine(-1.0, f, 0.0, f);
    for (PointId p = 0; p < 5; ++p) {
        CHECK(eval(same, e5, p) == eval(f, e5, p));
        CHECK(eval(neg, e5, p) == -eval(f, e5, p));
    }
    // indicator(A) + indicator(K~A) == 1 everywhere
    const FnSpec partition = combine(1.0, indicator({0, 3}), 1.0, indicator({1, 2, 4}));
    for (PointId p = 0; p < 5; ++p) CHECK(eval(partition, e5, p) == 1.0);
}

TEST_CASE("linear combination evaluates as weighted sum") {
    Rng rng(42);
    const MetricSpace e5 = make_e5();
    for (int t = 0; t < 50; ++t) {
        Rng local = rng.fork(static_cast<std::uint64_t>(t));
        const FnSpec f = latmean::testing::random_table_fn(local, e5);
        const FnSpec g = latmean::testing::random_table_fn(local, e5);
        const double a = 4.0 * local.unit() - 2.0;
        const double b = 4.0 * local.unit() - 2.0;
        const FnSpec combo = combine(a, f, b, g);
        for (PointId p = 0; p < 5; ++p)
            CHECK(eval(combo, e5, p) ==
                  doctest::Approx(a * eval(f, e5, p) + b * eval(g, e5, p)).epsilon(1e-15));
    }
}

TEST_CASE("validate_fn rejects partial bindings") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    CHECK_NOTHROW(validate_fn(FnSpec::table({1, 2, 3, 4, 5}), whole));
    CHECK_THROWS_AS(validate_fn(FnSpec::table({1, 2, 3}), whole), std::invalid_argument);
    CHECK_THROWS_AS(validate_fn(FnSpec::coordinate(2), whole), std::invalid_argument);
    CHECK_THROWS_AS(validate_fn(indicator({0, 9}), whole), std::invalid_argument);
    // A short table is fine if the domain avoids the missing ids.
    CHECK_NOTHROW(validate_fn(FnSpec::table({1, 2, 3}), restrict(e5, {0, 1, 2})));
}

TEST_CASE("value_range and max_abs") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const auto [lo, hi] = value_range(FnSpec::coordinate(0), whole);
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
    CHECK(max_abs(combine(1.0, FnSpec::coordinate(0), -0.75, FnSpec::constant(1.0)), whole) ==
          0.75);
}
