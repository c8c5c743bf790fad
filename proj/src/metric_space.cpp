#include "latmean/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latmean {

namespace {

void check_labels(int n, const std::vector<std::string>& labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("label count does not match point count");
}

std::vector<double> flatten_coords(const std::vector<std::vector<double>>& coords, int& dim_out) {
    if (coords.empty()) throw std::invalid_argument("space needs at least one point");
    const std::size_t dim = coords.front().size();
    if (dim == 0) throw std::invalid_argument("coordinates must have at least one axis");
    std::vector<double> flat;
    flat.reserve(coords.size() * dim);
    for (const auto& row : coords) {
        if (row.size() != dim) throw std::invalid_argument("coordinate dimension mismatch");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    dim_out = static_cast<int>(dim);
    return flat;
}

std::vector<double> flatten_matrix(const std::vector<std::vector<double>>& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) throw std::invalid_argument("space needs at least one point");
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : matrix) {
        if (row.size() != n) throw std::invalid_argument("distance matrix is not square");
        for (double v : row) {
            if (v < 0.0) throw std::invalid_argument("negative distance in matrix");
            flat.push_back(v);
        }
    }
    return flat;
}

}  // namespace

MetricSpace MetricSpace::from_coords(std::vector<std::vector<double>> coords, Metric metric,
                                     std::vector<std::string> labels) {
    if (metric == Metric::Matrix)
        throw std::invalid_argument("matrix metric requires an explicit matrix");
    MetricSpace s;
    s.coords_ = flatten_coords(coords, s.dim_);
    s.n_ = static_cast<int>(coords.size());
    s.metric_ = metric;
    check_labels(s.n_, labels);
    s.labels_ = std::move(labels);
    return s;
}

MetricSpace MetricSpace::from_matrix(const std::vector<std::vector<double>>& matrix,
                                     std::vector<std::string> labels) {
    MetricSpace s;
    s.matrix_ = flatten_matrix(matrix);
    s.n_ = static_cast<int>(matrix.size());
    s.metric_ = Metric::Matrix;
    check_labels(s.n_, labels);
    s.labels_ = std::move(labels);
    return s;
}

MetricSpace MetricSpace::from_matrix_with_coords(const std::vector<std::vector<double>>& matrix,
                                                 std::vector<std::vector<double>> coords,
                                                 std::vector<std::string> labels) {
    MetricSpace s = from_matrix(matrix, std::move(labels));
    if (static_cast<int>(coords.size()) != s.n_)
        throw std::invalid_argument("coordinate count does not match matrix size");
    s.coords_ = flatten_coords(coords, s.dim_);
    return s;
}

double MetricSpace::coord(PointId p, int axis) const {
    if (p < 0 || p >= n_) throw std::out_of_range("point id out of range");
    if (axis < 0 || axis >= dim_) throw std::out_of_range("coordinate axis out of range");
    return coords_[static_cast<std::size_t>(p) * dim_ + axis];
}

const std::string& MetricSpace::label(PointId p) const {
    static const std::string empty;
    if (p < 0 || p >= n_) throw std::out_of_range("point id out of range");
    if (labels_.empty()) return empty;
    return labels_[static_cast<std::size_t>(p)];
}

double MetricSpace::distance(PointId i, PointId j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("point id out of range");
    if (metric_ == Metric::Matrix)
        return matrix_[static_cast<std::size_t>(i) * n_ + j];

    const double* a = coords_.data() + static_cast<std::size_t>(i) * dim_;
    const double* b = coords_.data() + static_cast<std::size_t>(j) * dim_;
    switch (metric_) {
        case Metric::Euclidean: {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) {
                const double d = a[k] - b[k];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Metric::Manhattan: {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) s += std::abs(a[k] - b[k]);
            return s;
        }
        case Metric::Chebyshev: {
            double m = 0.0;
            for (int k = 0; k < dim_; ++k) m = std::max(m, std::abs(a[k] - b[k]));
            return m;
        }
        case Metric::Matrix:
            break;
    }
    return 0.0;  // unreachable
}

std::string MetricViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Identity:
            os << "identity: d(" << i << "," << i << ") = " << amount << " != 0";
            break;
        case Kind::Symmetry:
            os << "symmetry: |d(" << i << "," << j << ") - d(" << j << "," << i
               << ")| = " << amount;
            break;
        case Kind::Negative:
            os << "negative: d(" << i << "," << j << ") = " << amount;
            break;
        case Kind::Triangle:
            os << "triangle: d(" << i << "," << j << ") exceeds d(" << i << "," << k << ") + d("
               << k << "," << j << ") by " << amount;
            break;
        case Kind::ZeroDistance:
            os << "pseudo-metric: distinct points " << i << "," << j << " at distance "
               << amount;
            break;
    }
    return os.str();
}

ValidationReport validate_metric(const MetricSpace& space, double tolerance) {
    ValidationReport report;
    const int n = space.size();
    using Kind = MetricViolation::Kind;

    for (PointId i = 0; i < n; ++i) {
        const double dii = space.distance(i, i);
        if (std::abs(dii) > tolerance)
            report.violations.push_back({Kind::Identity, i, i, -1, dii});
    }
    for (PointId i = 0; i < n; ++i) {
        for (PointId j = i + 1; j < n; ++j) {
            const double dij = space.distance(i, j);
            const double dji = space.distance(j, i);
            if (std::abs(dij - dji) > tolerance)
                report.violations.push_back({Kind::Symmetry, i, j, -1, std::abs(dij - dji)});
            if (dij < -tolerance)
                report.violations.push_back({Kind::Negative, i, j, -1, dij});
            else if (std::abs(dij) <= tolerance)
                report.warnings.push_back({Kind::ZeroDistance, i, j, -1, dij});
        }
    }
    // One triangle violation per pair, witnessed by the worst midpoint.
    for (PointId i = 0; i < n; ++i) {
        for (PointId j = i + 1; j < n; ++j) {
            const double dij = space.distance(i, j);
            double best = std::numeric_limits<double>::infinity();
            PointId best_k = -1;
            for (PointId k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double via = space.distance(i, k) + space.distance(k, j);
                if (via < best) {
                    best = via;
                    best_k = k;
                }
            }
            if (best_k >= 0 && dij - best > tolerance)
                report.violations.push_back({Kind::Triangle, i, j, best_k, dij - best});
        }
    }
    return report;
}

Subspace::Subspace(const MetricSpace& parent) : parent_(&parent) {
    members_.resize(static_cast<std::size_t>(parent.size()));
    for (int i = 0; i < parent.size(); ++i) members_[static_cast<std::size_t>(i)] = i;
}

Subspace::Subspace(const MetricSpace& parent, std::vector<PointId> members)
    : parent_(&parent), members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("subspace members must be nonempty");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.front() < 0 || members_.back() >= parent.size())
        throw std::invalid_argument("subspace member id out of range");
}

bool Subspace::contains(PointId p) const {
    return std::binary_search(members_.begin(), members_.end(), p);
}

Subspace restrict(const MetricSpace& space, std::vector<PointId> members) {
    return Subspace(space, std::move(members));
}

double diameter(const Subspace& domain) {
    double d = 0.0;
    const auto& ids = domain.ids();
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
            d = std::max(d, domain.distance(ids[a], ids[b]));
    return d;
}

double min_positive_distance(const Subspace& domain) {
    double best = 0.0;
    bool found = false;
    const auto& ids = domain.ids();
    for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const double d = domain.distance(ids[a], ids[b]);
            if (d > 0.0 && (!found || d < best)) {
                best = d;
                found = true;
            }
        }
    }
    return best;
}

}  // namespace latmean
