#pragma once

#include "latmean/bitset.hpp"
#include "latmean/function.hpp"
#include "latmean/metric_space.hpp"
#include "latmean/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace latmean {

/// Conflict graph of a domain at scale eps: points i != j are adjacent iff
/// distance(i, j) < eps + tie_tol. Eps-dispersions are exactly the independent
/// sets of this graph, and eps-lattices its maximal independent sets.
/// Comparison is strict at the boundary: a pair at distance exactly eps does
/// not conflict (tie_tol, default 0, lets callers fatten conflicts for noisy
/// data).
struct ConflictGraph {
    int n = 0;
    double eps = 0.0;
    double tie_tol = 0.0;
    std::vector<Bits> adj;  // indexed by domain rank, not PointId

    static ConflictGraph build(const Subspace& domain, double eps, double tie_tol = 0.0);
};

/// One eps-lattice: a maximal eps-dispersion of its domain. Members are
/// parent-space ids, sorted ascending.
struct Lattice {
    std::vector<PointId> members;
    double eps = 0.0;
};

struct SearchConfig {
    int restarts = 16;
    int max_moves = 0;  // 0 means 10 * domain size
    std::uint64_t rng_seed = 0;
    bool anneal = false;
    double initial_temperature = 1.0;
    double cooling = 0.95;  // in (0,1)
};

/// All pairwise distances within subset >= eps. Vacuously true for empty sets
/// and singletons.
bool is_dispersion(const Subspace& domain, std::span<const PointId> subset, double eps,
                   double tie_tol = 0.0);

/// subset is an eps-dispersion and no single domain point can be added while
/// keeping the dispersion property (single-point maximality suffices since
/// supersets of non-dispersions are never dispersions).
bool is_lattice(const Subspace& domain, std::span<const PointId> subset, double eps,
                double tie_tol = 0.0);

/// Streams every eps-lattice of the domain exactly once (pivoted
/// Bron-Kerbosch over the conflict graph's complement). Emission order is
/// unspecified; members arrive sorted. Throws CapExceeded as soon as more
/// than `cap` lattices exist.
void for_each_lattice(const Subspace& domain, double eps, std::size_t cap,
                      const std::function<void(std::span<const PointId>)>& emit);

/// Exact oracle listing, in lexicographic order of sorted member lists.
std::vector<Lattice> enumerate_lattices(const Subspace& domain, double eps, std::size_t cap);

/// Scans points in the given order, keeping each point at distance >= eps
/// from everything kept so far. The result is always a lattice.
Lattice greedy_lattice(const Subspace& domain, double eps, std::span<const PointId> order);

/// greedy_lattice under a seed-determined uniform random permutation.
Lattice random_lattice(const Subspace& domain, double eps, std::uint64_t seed);

enum class Direction { Minimize, Maximize };

struct BoundEstimate {
    Lattice lattice;
    double value = 0.0;
};

/// Per-point weights defining the objective  sum(num[r]) / sum(den[r])  over
/// a lattice's members, indexed by domain rank (position in domain.ids()).
/// The sample mean of f is the special case den = 1 everywhere; subset count
/// ratios use 0/1 weights. States with zero denominator are skipped.
struct RatioObjective {
    std::vector<double> num;
    std::vector<double> den;
};

/// Local search for an extremal objective value over the domain's lattices.
/// Every visited state is a valid lattice, so the best value seen is a
/// legitimate inner bound: at most the true sup when maximizing, at least the
/// true inf when minimizing. Moves remove one member and re-maximalize
/// greedily in an order biased toward the objective; ties break toward the
/// lexicographically smaller member list. Deterministic for a fixed seed.
/// Returns nullopt only if every visited state had zero denominator.
std::optional<BoundEstimate> extremal_search(const Subspace& domain, double eps,
                                             const RatioObjective& objective, Direction direction,
                                             const SearchConfig& cfg);

/// extremal_search specialised to the sample mean of f.
BoundEstimate extremal_average(const Subspace& domain, double eps, const FnSpec& f,
                               Direction direction, const SearchConfig& cfg);

struct MinLatticeSize {
    int size = 0;
    bool exact = false;
    Lattice witness;
};

/// Smallest lattice cardinality at this eps. Runs a branch-and-bound over
/// independent dominating sets of the conflict graph, seeded with greedy and
/// random lattices; exact when the search completes within node_cap, else the
/// smallest size found.
MinLatticeSize min_lattice_size(const Subspace& domain, double eps,
                                std::size_t node_cap = 2'000'000,
                                const SearchConfig& cfg = {});

}  // namespace latmean
