#pragma once

#include "latmean/function.hpp"
#include "latmean/lattice.hpp"
#include "latmean/metric_space.hpp"
#include "latmean/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace latmean {

/// Lower and upper mean of f at one eps: the min / max of the sample mean
/// over the domain's eps-lattices. Exact bounds come from full enumeration;
/// heuristic bounds are an inner approximation (reported lower >= true lower,
/// reported upper <= true upper). Witnesses achieve the reported values.
struct MeanBounds {
    double eps = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool exact = false;
    Lattice witness_low;
    Lattice witness_high;
    std::optional<std::size_t> lattice_count;  // set when exact
    std::optional<int> min_lattice_size;       // set when exact

    double gap() const { return upper - lower; }
    double midpoint() const { return 0.5 * (lower + upper); }
};

/// Arithmetic mean of f over a nonempty point set, summed in ascending id
/// order.
double sample_mean(const FnSpec& f, const MetricSpace& space, std::span<const PointId> points);
double sample_mean(const FnSpec& f, const Subspace& domain, const Lattice& lattice);

MeanBounds bounds_exact(const Subspace& domain, const FnSpec& f, double eps, std::size_t cap);
MeanBounds bounds_heuristic(const Subspace& domain, const FnSpec& f, double eps,
                            const SearchConfig& cfg);
/// Exact when enumeration fits the cap, heuristic otherwise.
MeanBounds bounds_auto(const Subspace& domain, const FnSpec& f, double eps, std::size_t cap,
                       const SearchConfig& cfg);

/// Geometric eps schedule: eps0 * ratio^k for k = 0 .. steps-1, strictly
/// decreasing.
struct Schedule {
    double eps0 = 1.0;
    double ratio = 0.5;  // in (0,1)
    int steps = 8;

    std::vector<double> values() const;
};

enum class MeanVerdict { HasMean, NoMean, Inconclusive };
const char* to_string(MeanVerdict v);

struct SweepTolerances {
    double tol_gap = 1e-9;
    double tol_drift = 1e-9;
    int stable_steps = 3;
};

/// A NoMean verdict asserts a persistent gap; heuristic gaps under-estimate
/// and can never prove one, so NoMean additionally requires every step exact
/// and a gap at least this floor throughout the stable window.
inline constexpr double kNoMeanGapFloor = 1e-6;

struct SweepResult {
    std::vector<MeanBounds> trail;  // ordered by decreasing eps
    MeanVerdict verdict = MeanVerdict::Inconclusive;
    std::optional<double> mean_estimate;  // midpoint of final bounds when HasMean
    double gap_floor = 0.0;               // smallest observed upper - lower
};

/// Bounds along the schedule plus a mean-existence verdict. HasMean when the
/// trailing stable window has gap <= tol_gap and midpoint drift <= tol_drift;
/// NoMean per the exactness rule above; otherwise Inconclusive.
SweepResult sweep(const Subspace& domain, const FnSpec& f, const Schedule& schedule,
                  const SweepTolerances& tols, std::size_t cap, const SearchConfig& cfg);

enum class GrowthVerdict { GrowingUnboundedLikely, Bounded, Inconclusive };
const char* to_string(GrowthVerdict v);

struct RegularityStep {
    double eps = 0.0;
    int min_size = 0;
    bool exact = false;
};

/// Minimum lattice size per eps. A single finite domain can at most plateau
/// at its own size (verdict Bounded); growth claims need a refinement family.
struct RegularityProfile {
    std::vector<RegularityStep> steps;
    GrowthVerdict verdict = GrowthVerdict::Inconclusive;
};

RegularityProfile regularity_profile(const Subspace& domain, const Schedule& schedule,
                                     std::size_t node_cap, const SearchConfig& cfg);

/// Refinement-family variant: one (domain, eps) pair per family member, in
/// refinement order. GrowingUnboundedLikely when exact minimum sizes strictly
/// increase along the family.
RegularityProfile regularity_family(std::span<const std::pair<Subspace, double>> family,
                                    std::size_t node_cap, const SearchConfig& cfg);

/// Fixed-eps exact checks of the mean algebra: negation duality, positive
/// homogeneity, the subadditivity chain for alpha*f + beta*g, pointwise
/// dominance monotonicity, and constant lower/upper bounds.
CheckReport algebra_check(const Subspace& domain, const FnSpec& f, const FnSpec& g, double alpha,
                          double beta, double eps, std::size_t cap);

/// With g = f shifted by deltas at the given points, asserts
/// |l(g) - l(f)| and |u(g) - u(f)| <= m * max|delta| / (min lattice size).
CheckReport finite_modification_check(const Subspace& domain, const FnSpec& f,
                                      std::span<const PointId> points,
                                      std::span<const double> deltas, double eps,
                                      std::size_t cap);

}  // namespace latmean
