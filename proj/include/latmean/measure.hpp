#pragma once

#include "latmean/mean.hpp"

#include <optional>
#include <span>
#include <vector>

namespace latmean {

/// Measure of A relative to B: the mean of A's characteristic function with
/// B as the domain. The trail is the underlying sweep.
struct MeasureResult {
    MeanVerdict verdict = MeanVerdict::Inconclusive;
    std::optional<double> value;  // in [0,1] when present
    SweepResult trail;
};

MeasureResult relative_measure(std::span<const PointId> a, std::span<const PointId> b,
                               const MetricSpace& space, const Schedule& schedule,
                               const SweepTolerances& tols, std::size_t cap,
                               const SearchConfig& cfg);

/// Fixed-eps complement inequalities over K:
///   l(chi_A) + l(chi_{K\A}) <= 1  and  u(chi_A) + u(chi_{K\A}) >= 1,
/// with equality when both gaps are zero.
CheckReport complement_check(std::span<const PointId> a, const Subspace& k_domain, double eps,
                             std::size_t cap);

/// Extremes over the lattices S of an ambient domain of |A n S| / |B n S|.
/// Lattices with B n S empty are skipped and counted, never treated as 0.
struct BoundaryRatioBounds {
    double eps = 0.0;
    std::optional<double> ratio_low;
    std::optional<double> ratio_high;
    bool exact = false;
    std::size_t skipped = 0;
    std::optional<Lattice> witness_low;
    std::optional<Lattice> witness_high;
};

BoundaryRatioBounds boundary_ratio_bounds(std::span<const PointId> a, std::span<const PointId> b,
                                          const Subspace& k_domain, double eps, std::size_t cap,
                                          const SearchConfig& cfg);

enum class BoundaryVerdict { ThinBoundary, NotThin, Inconclusive };
const char* to_string(BoundaryVerdict v);

struct ThinBoundaryResult {
    BoundaryVerdict verdict = BoundaryVerdict::Inconclusive;
    std::optional<double> value;  // the common ratio limit when ThinBoundary
    std::vector<std::vector<BoundaryRatioBounds>> trails;  // one per superset
};

/// Ratio trail per ambient superset K >= B. ThinBoundary when every trail's
/// trailing stable window is exact with ratio gap and drift <= tol and the
/// per-K limits agree within tol; NotThin when an exact persistent gap
/// remains (same exactness rule as a NoMean verdict).
ThinBoundaryResult thin_boundary_verdict(std::span<const PointId> a, std::span<const PointId> b,
                                         std::span<const Subspace> supersets,
                                         const Schedule& schedule, double tol, int stable_steps,
                                         std::size_t cap, const SearchConfig& cfg);

/// For A <= B <= C inside ambient K: computes the three thin-boundary values
/// and asserts (A|C) = (A|B)(B|C) within tol when all three are conclusive.
CheckReport composition_check(std::span<const PointId> a, std::span<const PointId> b,
                              std::span<const PointId> c, const Subspace& k_domain,
                              const Schedule& schedule, double tol, int stable_steps,
                              std::size_t cap, const SearchConfig& cfg);

/// Fixed-eps finite-family chain for pairwise disjoint nonempty parts:
///   sum l(chi_part) <= l(chi_union) <= u(chi_union) <= sum u(chi_part).
CheckReport disjoint_union_check(std::span<const std::vector<PointId>> parts,
                                 const Subspace& k_domain, double eps, std::size_t cap);

}  // namespace latmean
