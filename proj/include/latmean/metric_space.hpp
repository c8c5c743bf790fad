#pragma once

#include "latmean/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace latmean {

enum class Metric { Euclidean, Manhattan, Chebyshev, Matrix };

/// Finite point set with a total distance oracle. Immutable after
/// construction; distances come either from per-point coordinates under a
/// named metric or from an explicit n x n matrix. Construction validates
/// shape and nonnegativity only; the metric axioms are checked on demand by
/// validate_metric so that deliberately broken matrices can be inspected.
class MetricSpace {
public:
    static MetricSpace from_coords(std::vector<std::vector<double>> coords, Metric metric,
                                   std::vector<std::string> labels = {});
    static MetricSpace from_matrix(const std::vector<std::vector<double>>& matrix,
                                   std::vector<std::string> labels = {});
    /// Explicit matrix plus coordinates (coordinates are then only used by
    /// coordinate-based functions and region predicates, not for distances).
    static MetricSpace from_matrix_with_coords(const std::vector<std::vector<double>>& matrix,
                                               std::vector<std::vector<double>> coords,
                                               std::vector<std::string> labels = {});

    int size() const { return n_; }
    Metric metric() const { return metric_; }
    bool has_coords() const { return dim_ > 0; }
    int dim() const { return dim_; }

    double coord(PointId p, int axis) const;
    const std::string& label(PointId p) const;
    bool has_labels() const { return !labels_.empty(); }

    double distance(PointId i, PointId j) const;

private:
    MetricSpace() = default;

    int n_ = 0;
    int dim_ = 0;
    Metric metric_ = Metric::Euclidean;
    std::vector<double> coords_;  // n_ x dim_, row-major
    std::vector<double> matrix_;  // n_ x n_ when metric_ == Matrix
    std::vector<std::string> labels_;
};

struct MetricViolation {
    enum class Kind { Identity, Symmetry, Negative, Triangle, ZeroDistance };
    Kind kind;
    PointId i = -1, j = -1, k = -1;  // k is the witness midpoint for Triangle
    double amount = 0.0;            // how far past the tolerance

    std::string describe() const;
};

struct ValidationReport {
    std::vector<MetricViolation> violations;
    std::vector<MetricViolation> warnings;  // pseudo-metric: distinct points at distance ~0
    bool ok() const { return violations.empty(); }
};

/// Lists every axiom instance violated beyond `tolerance` (default exact).
/// Zero-distance distinct points are reported as warnings, not violations.
ValidationReport validate_metric(const MetricSpace& space, double tolerance = 0.0);

/// View of a space restricted to a sorted member subset. The whole space is
/// the trivial subspace; every engine operates on this type. Holds a pointer
/// to the parent, which must outlive the view.
class Subspace {
public:
    /*implicit*/ Subspace(const MetricSpace& parent);
    Subspace(const MetricSpace& parent, std::vector<PointId> members);

    const MetricSpace& parent() const { return *parent_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<PointId>& ids() const { return members_; }
    PointId id_at(int rank) const { return members_[static_cast<std::size_t>(rank)]; }
    bool contains(PointId p) const;

    double distance(PointId i, PointId j) const { return parent_->distance(i, j); }

private:
    const MetricSpace* parent_;
    std::vector<PointId> members_;  // sorted, unique, nonempty
};

Subspace restrict(const MetricSpace& space, std::vector<PointId> members);

/// Max pairwise distance; 0 for a singleton.
double diameter(const Subspace& domain);

/// Smallest strictly positive pairwise distance; 0 if none exists.
double min_positive_distance(const Subspace& domain);

}  // namespace latmean
