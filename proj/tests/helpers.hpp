#pragma once

// Shared fixtures for the test binaries.

#include "latmean/function.hpp"
#include "latmean/metric_space.hpp"
#include "latmean/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace latmean::testing {

/// Five collinear points {0, 0.25, 0.5, 0.75, 1}, euclidean.
inline MetricSpace make_e5() {
    return MetricSpace::from_coords({{0.0}, {0.25}, {0.5}, {0.75}, {1.0}}, Metric::Euclidean);
}

/// count equally spaced 1-d points starting at 0: {k * step}.
inline MetricSpace make_line(int count, double step) {
    std::vector<std::vector<double>> coords;
    coords.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) coords.push_back({k * step});
    return MetricSpace::from_coords(std::move(coords), Metric::Euclidean);
}

/// count equally spaced points covering [0,1] inclusive.
inline MetricSpace make_unit_grid(int count) {
    return make_line(count, 1.0 / (count - 1));
}

/// Two interleaved classes on [0,1]: ids 0..8 at k/8, ids 9..16 at k/8+1/16.
/// In the conflict regime eps in (1/16, 1/8] each pure class is a lattice.
inline MetricSpace make_interleaved17() {
    std::vector<std::vector<double>> coords;
    for (int k = 0; k <= 8; ++k) coords.push_back({k / 8.0});
    for (int k = 0; k < 8; ++k) coords.push_back({k / 8.0 + 1.0 / 16.0});
    return MetricSpace::from_coords(std::move(coords), Metric::Euclidean);
}

inline std::vector<PointId> first_class17() {
    return {0, 1, 2, 3, 4, 5, 6, 7, 8};
}

/// Random point cloud with distinct points (dims 1..3, mixed snapped and
/// continuous coordinates).
inline MetricSpace random_cloud(Rng& rng, int n) {
    const int dim = 1 + static_cast<int>(rng.below(3));
    const bool snapped = rng.below(2) == 0;
    std::vector<std::vector<double>> coords(static_cast<std::size_t>(n));
    for (auto& row : coords) {
        row.resize(static_cast<std::size_t>(dim));
        for (double& x : row)
            x = snapped ? 0.05 * static_cast<double>(rng.below(21)) : rng.unit();
    }
    for (int i = 0; i < n; ++i) {
        for (int attempts = 0; attempts < 64; ++attempts) {
            bool duplicate = false;
            for (int j = 0; j < i && !duplicate; ++j)
                duplicate =
                    coords[static_cast<std::size_t>(i)] == coords[static_cast<std::size_t>(j)];
            if (!duplicate) break;
            for (double& x : coords[static_cast<std::size_t>(i)]) x = rng.unit();
        }
    }
    const Metric metric = static_cast<Metric>(rng.below(3));
    return MetricSpace::from_coords(std::move(coords), metric);
}

/// Random symmetric matrix repaired into a metric by min-plus closure.
inline MetricSpace random_repaired_matrix(Rng& rng, int n) {
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.1 + 1.9 * rng.unit();
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    std::min(d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                             d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                 d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    return MetricSpace::from_matrix(d);
}

inline MetricSpace random_space(Rng& rng, int n) {
    return rng.below(2) == 0 ? random_cloud(rng, n) : random_repaired_matrix(rng, n);
}

/// Eps draw that sometimes lands exactly on a pairwise distance and sometimes
/// in the degenerate regimes.
inline double random_eps(Rng& rng, const Subspace& domain) {
    const double diam = diameter(domain);
    const double min_pos = min_positive_distance(domain);
    switch (rng.below(5)) {
        case 0: {
            const auto& ids = domain.ids();
            for (int attempts = 0; attempts < 32; ++attempts) {
                const PointId i = ids[rng.below(ids.size())];
                const PointId j = ids[rng.below(ids.size())];
                const double d = domain.distance(i, j);
                if (d > 0.0) return d;
            }
            return std::max(diam, 1e-3);
        }
        case 1:
            return diam > 0.0 ? diam * 1.5 : 1.0;
        case 2:
            return min_pos > 0.0 ? min_pos * 0.9 : 1e-3;
        default:
            return std::max(1e-6, rng.unit() * diam * 1.2);
    }
}

inline FnSpec random_table_fn(Rng& rng, const MetricSpace& space, double lo = -5.0,
                              double hi = 5.0) {
    std::vector<double> values(static_cast<std::size_t>(space.size()), 0.0);
    for (double& v : values) v = lo + (hi - lo) * rng.unit();
    return FnSpec::table(std::move(values));
}

}  // namespace latmean::testing
