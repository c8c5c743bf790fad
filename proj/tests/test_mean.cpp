#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "latmean/mean.hpp"
#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

using namespace latmean;
using latmean::testing::make_e5;
using latmean::testing::make_interleaved17;
using latmean::testing::make_unit_grid;

namespace {
const std::size_t kCap = 1'000'000;
}

TEST_CASE("sample_mean") {
    const MetricSpace e5 = make_e5();
    const FnSpec x = FnSpec::coordinate(0);
    CHECK(sample_mean(x, e5, std::vector<PointId>{0, 2, 4}) == 0.5);
    CHECK(sample_mean(FnSpec::constant(2.25), e5, std::vector<PointId>{1, 3}) == 2.25);
    CHECK(sample_mean(indicator({0, 1, 2}), e5, std::vector<PointId>{1, 4}) == 0.5);
    CHECK_THROWS_AS(sample_mean(x, e5, std::vector<PointId>{}), std::invalid_argument);
}

TEST_CASE("bounds_exact on the 5-point line") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const FnSpec x = FnSpec::coordinate(0);

    const MeanBounds b = bounds_exact(whole, x, 0.3, kCap);
    CHECK(b.lower == 0.375);
    CHECK(b.upper == 0.625);
    CHECK(b.exact);
    CHECK(b.lattice_count == std::size_t{4});
    CHECK(b.min_lattice_size == 2);
    CHECK(b.witness_low.members == std::vector<PointId>{0, 3});
    CHECK(b.witness_high.members == std::vector<PointId>{1, 4});

    const MeanBounds fine = bounds_exact(whole, x, 0.2, kCap);
    CHECK(fine.lower == 0.5);
    CHECK(fine.upper == 0.5);
    CHECK(fine.lattice_count == std::size_t{1});

    const MeanBounds ind = bounds_exact(whole, indicator({0, 1, 2}), 0.3, kCap);
    CHECK(ind.lower == 0.5);
    CHECK(ind.upper == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(ind.witness_low.members == std::vector<PointId>{0, 3});  // first of the ties
    CHECK(ind.witness_high.members == std::vector<PointId>{0, 2, 4});
}

TEST_CASE("bounds_heuristic finds the optima on the 5-point line and is deterministic") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const SearchConfig cfg;
    const MeanBounds a = bounds_heuristic(whole, FnSpec::coordinate(0), 0.3, cfg);
    const MeanBounds b = bounds_heuristic(whole, FnSpec::coordinate(0), 0.3, cfg);
    CHECK(a.lower == 0.375);
    CHECK(a.upper == 0.625);
    CHECK_FALSE(a.exact);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.witness_low.members == b.witness_low.members);

    const MeanBounds c = bounds_heuristic(whole, FnSpec::constant(1.5), 0.3, cfg);
    CHECK(c.lower == 1.5);
    CHECK(c.upper == 1.5);
}

TEST_CASE("heuristic bounds stay inside exact bounds") {
    Rng rng(90210);
    for (int t = 0; t < 40; ++t) {
        Rng local = rng.fork(static_cast<std::uint64_t>(t));
        const MetricSpace space =
            latmean::testing::random_space(local, 2 + static_cast<int>(local.below(13)));
        const Subspace whole(space);
        const double eps = latmean::testing::random_eps(local, whole);
        const FnSpec f = latmean::testing::random_table_fn(local, space);
        SearchConfig cfg;
        cfg.rng_seed = local.next();

        const MeanBounds exact = bounds_exact(whole, f, eps, kCap);
        const MeanBounds heur = bounds_heuristic(whole, f, eps, cfg);
        CHECK(heur.lower >= exact.lower - 1e-12);
        CHECK(heur.upper <= exact.upper + 1e-12);
        CHECK(heur.lower <= heur.upper);
        CHECK(sample_mean(f, whole, heur.witness_low) == heur.lower);
        CHECK(sample_mean(f, whole, heur.witness_high) == heur.upper);
    }
}

TEST_CASE("bounds agree with the power-set oracle") {
    Rng rng(424242);
    for (int t = 0; t < 40; ++t) {
        Rng local = rng.fork(static_cast<std::uint64_t>(t));
        const MetricSpace space =
            latmean::testing::random_space(local, 2 + static_cast<int>(local.below(11)));
        const Subspace whole(space);
        const double eps = latmean::testing::random_eps(local, whole);
        const FnSpec f = latmean::testing::random_table_fn(local, space);
        const auto [olo, ohi] = oracle::oracle_bounds(whole, f, eps);
        const MeanBounds b = bounds_exact(whole, f, eps, kCap);
        CHECK(std::abs(b.lower - olo) <= 1e-12);
        CHECK(std::abs(b.upper - ohi) <= 1e-12);
    }
}

TEST_CASE("schedule validation and values") {
    CHECK(Schedule{1.0, 0.5, 3}.values() == std::vector<double>{1.0, 0.5, 0.25});
    CHECK_THROWS_AS((Schedule{0.0, 0.5, 3}.values()), std::invalid_argument);
    CHECK_THROWS_AS((Schedule{1.0, 1.5, 3}.values()), std::invalid_argument);
    CHECK_THROWS_AS((Schedule{1.0, 0.5, 0}.values()), std::invalid_argument);
}

TEST_CASE("sweep: constant functions have their constant as mean for every schedule") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const SweepTolerances tols;
    const SearchConfig cfg;
    for (const Schedule& schedule :
         {Schedule{1.0, 0.5, 5}, Schedule{2.0, 0.25, 1}, Schedule{0.07, 0.9, 2}}) {
        const SweepResult r = sweep(whole, FnSpec::constant(3.5), schedule, tols, kCap, cfg);
        CHECK(r.verdict == MeanVerdict::HasMean);
        CHECK(*r.mean_estimate == 3.5);
        CHECK(r.gap_floor == 0.0);
    }
}

TEST_CASE("sweep finds the grid mean of the coordinate function") {
    const MetricSpace grid = make_unit_grid(64);
    const Subspace whole(grid);
    const Schedule schedule{0.5, 0.5, 8};
    const SweepTolerances tols;
    const SearchConfig cfg;
    const SweepResult r = sweep(whole, FnSpec::coordinate(0), schedule, tols, kCap, cfg);
    CHECK(r.verdict == MeanVerdict::HasMean);
    CHECK(std::abs(*r.mean_estimate - 0.5) <= 1e-9);
    CHECK(r.trail.size() == 8);
    CHECK(r.trail.back().exact);
    CHECK(r.trail.back().lattice_count == std::size_t{1});
}

TEST_CASE("sweep returns NoMean on the interleaved two-class grid") {
    const MetricSpace k17 = make_interleaved17();
    const Subspace whole(k17);
    const FnSpec chi = indicator(latmean::testing::first_class17());

    const MeanBounds b = bounds_exact(whole, chi, 0.125, kCap);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 1.0);

    // Conflict regime: all eps stay in (1/16, 1/8].
    const Schedule schedule{0.125, 0.9, 5};
    const SweepResult r = sweep(whole, chi, schedule, SweepTolerances{}, kCap, SearchConfig{});
    CHECK(r.verdict == MeanVerdict::NoMean);
    CHECK_FALSE(r.mean_estimate.has_value());
    CHECK(r.gap_floor == 1.0);
}

TEST_CASE("sweep is inconclusive when the gap persists but some step was heuristic") {
    const MetricSpace k17 = make_interleaved17();
    const Subspace whole(k17);
    const FnSpec chi = indicator(latmean::testing::first_class17());
    const Schedule schedule{0.125, 0.9, 5};
    // A tiny cap forces the heuristic path everywhere.
    const SweepResult r = sweep(whole, chi, schedule, SweepTolerances{}, 2, SearchConfig{});
    CHECK(r.verdict == MeanVerdict::Inconclusive);
}

TEST_CASE("algebra_check passes on the documented instance") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const FnSpec f = FnSpec::coordinate(0);
    const FnSpec one = FnSpec::constant(1.0);

    const CheckReport r = algebra_check(whole, f, one, -1.0, 1.0, 0.3, kCap);
    CHECK(r.all_passed());

    // l(f)+l(g) = 1.375 = l(f+g) and u(f+g) = 1.625 = u(f)+u(g) at alpha=beta=1.
    const CheckReport sum = algebra_check(whole, f, one, 1.0, 1.0, 0.3, kCap);
    CHECK(sum.all_passed());
    const MeanBounds bsum = bounds_exact(whole, combine(1.0, f, 1.0, one), 0.3, kCap);
    CHECK(bsum.lower == 1.375);
    CHECK(bsum.upper == 1.625);

    const CheckReport zero = algebra_check(whole, f, one, 0.0, 0.5, 0.3, kCap);
    CHECK(zero.all_passed());
}

TEST_CASE("finite modification bound") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const FnSpec f = FnSpec::coordinate(0);

    const std::vector<PointId> pts{2};
    const std::vector<double> deltas{1.0};
    CHECK(finite_modification_check(whole, f, pts, deltas, 0.3, kCap).all_passed());

    const std::vector<double> zeros{0.0};
    const MeanBounds bf = bounds_exact(whole, f, 0.3, kCap);
    const MeanBounds bz =
        bounds_exact(whole, combine(1.0, f, 0.0, indicator({2})), 0.3, kCap);
    CHECK(bf.lower == bz.lower);
    CHECK(bf.upper == bz.upper);
    CHECK(finite_modification_check(whole, f, pts, zeros, 0.3, kCap).all_passed());

    // Edgeless regime: the unique lattice is the whole grid, so the shift is
    // exactly delta / n.
    const MeanBounds base = bounds_exact(whole, f, 0.2, kCap);
    const MeanBounds shifted =
        bounds_exact(whole, combine(1.0, f, 0.75, indicator({2})), 0.2, kCap);
    CHECK(shifted.lower - base.lower == doctest::Approx(0.75 / 5.0).epsilon(1e-15));
    CHECK(shifted.upper - base.upper == doctest::Approx(0.75 / 5.0).epsilon(1e-15));
}

TEST_CASE("regularity profile plateaus on a finite space") {
    const MetricSpace e5 = make_e5();
    const Subspace whole(e5);
    const RegularityProfile p =
        regularity_profile(whole, Schedule{2.0, 0.5, 5}, 1u << 20, SearchConfig{});
    REQUIRE(p.steps.size() == 5);
    CHECK(p.steps.front().min_size == 1);
    CHECK(p.steps.back().min_size == 5);
    CHECK(p.verdict == GrowthVerdict::Bounded);
    for (const auto& s : p.steps) CHECK(s.exact);

    const MetricSpace one = MetricSpace::from_coords({{0.0}}, Metric::Euclidean);
    const RegularityProfile single =
        regularity_profile(Subspace(one), Schedule{1.0, 0.5, 3}, 1u << 20, SearchConfig{});
    for (const auto& s : single.steps) CHECK(s.min_size == 1);
    CHECK(single.verdict == GrowthVerdict::Bounded);
}

TEST_CASE("regularity family of refining grids grows") {
    std::vector<std::pair<Subspace, double>> family;
    std::vector<MetricSpace> keep;
    keep.reserve(3);
    for (int n : {16, 32, 64}) keep.push_back(latmean::testing::make_line(n, 1.0 / n));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const int n = 16 << i;
        family.emplace_back(Subspace(keep[i]), 2.0 / n);
    }
    const RegularityProfile p = regularity_family(family, 2'000'000, SearchConfig{});
    CHECK(p.verdict == GrowthVerdict::GrowingUnboundedLikely);
    REQUIRE(p.steps.size() == 3);
    CHECK(p.steps[0].min_size == 6);
    CHECK(p.steps[1].min_size == 11);
    CHECK(p.steps[2].min_size == 22);
}
