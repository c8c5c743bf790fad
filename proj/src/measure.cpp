#include "latmean/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace latmean {

namespace {

constexpr double kIdentitySlack = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<PointId> sorted_unique(std::span<const PointId> ids) {
    std::vector<PointId> v(ids.begin(), ids.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool subset_of(const std::vector<PointId>& a, const std::vector<PointId>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

const char* to_string(BoundaryVerdict v) {
    switch (v) {
        case BoundaryVerdict::ThinBoundary: return "ThinBoundary";
        case BoundaryVerdict::NotThin: return "NotThin";
        case BoundaryVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

MeasureResult relative_measure(std::span<const PointId> a, std::span<const PointId> b,
                               const MetricSpace& space, const Schedule& schedule,
                               const SweepTolerances& tols, std::size_t cap,
                               const SearchConfig& cfg) {
    const std::vector<PointId> sa = sorted_unique(a);
    const std::vector<PointId> sb = sorted_unique(b);
    if (sb.empty()) throw std::invalid_argument("relative measure needs a nonempty B");
    if (!subset_of(sa, sb)) throw std::invalid_argument("A must be a subset of B");

    const Subspace domain(space, sb);
    MeasureResult result;
    result.trail = sweep(domain, indicator(sa), schedule, tols, cap, cfg);
    result.verdict = result.trail.verdict;
    result.value = result.trail.mean_estimate;
    return result;
}

CheckReport complement_check(std::span<const PointId> a, const Subspace& k_domain, double eps,
                             std::size_t cap) {
    const std::vector<PointId> sa = sorted_unique(a);
    if (!subset_of(sa, k_domain.ids()))
        throw std::invalid_argument("A must be a subset of the domain");
    std::vector<PointId> rest;
    for (PointId p : k_domain.ids())
        if (!std::binary_search(sa.begin(), sa.end(), p)) rest.push_back(p);

    const MeanBounds ba = bounds_exact(k_domain, indicator(sa), eps, cap);
    const MeanBounds bc = bounds_exact(k_domain, indicator(rest), eps, cap);

    CheckReport report;
    report.add("complement lower sum", leq_rel(ba.lower + bc.lower, 1.0, kIdentitySlack),
               "l(A)+l(K~A)=" + fmt(ba.lower + bc.lower) + " <= 1");
    report.add("complement upper sum", leq_rel(1.0, ba.upper + bc.upper, kIdentitySlack),
               "u(A)+u(K~A)=" + fmt(ba.upper + bc.upper) + " >= 1");
    if (ba.gap() == 0.0 && bc.gap() == 0.0)
        report.add("complement equality", eq_rel(ba.lower + bc.lower, 1.0, kIdentitySlack),
                   "zero gaps: sums must equal 1, got " + fmt(ba.lower + bc.lower));
    return report;
}

BoundaryRatioBounds boundary_ratio_bounds(std::span<const PointId> a, std::span<const PointId> b,
                                          const Subspace& k_domain, double eps, std::size_t cap,
                                          const SearchConfig& cfg) {
    const std::vector<PointId> sa = sorted_unique(a);
    const std::vector<PointId> sb = sorted_unique(b);
    if (!subset_of(sa, sb)) throw std::invalid_argument("A must be a subset of B");
    if (!subset_of(sb, k_domain.ids()))
        throw std::invalid_argument("B must be a subset of the ambient domain");

    BoundaryRatioBounds out;
    out.eps = eps;
    const auto in_a = [&](PointId p) { return std::binary_search(sa.begin(), sa.end(), p); };
    const auto in_b = [&](PointId p) { return std::binary_search(sb.begin(), sb.end(), p); };

    try {
        std::vector<PointId> low_members, high_members;
        for_each_lattice(k_domain, eps, cap, [&](std::span<const PointId> members) {
            int ca = 0, cb = 0;
            for (PointId p : members) {
                ca += in_a(p) ? 1 : 0;
                cb += in_b(p) ? 1 : 0;
            }
            if (cb == 0) {
                ++out.skipped;
                return;
            }
            const double ratio = static_cast<double>(ca) / static_cast<double>(cb);
            const std::vector<PointId> as_vec(members.begin(), members.end());
            if (!out.ratio_low || ratio < *out.ratio_low ||
                (ratio == *out.ratio_low && as_vec < low_members)) {
                out.ratio_low = ratio;
                low_members = as_vec;
            }
            if (!out.ratio_high || ratio > *out.ratio_high ||
                (ratio == *out.ratio_high && as_vec < high_members)) {
                out.ratio_high = ratio;
                high_members = as_vec;
            }
        });
        out.exact = true;
        if (out.ratio_low) {
            out.witness_low = Lattice{std::move(low_members), eps};
            out.witness_high = Lattice{std::move(high_members), eps};
        }
        return out;
    } catch (const CapExceeded&) {
        // Heuristic path with the count-ratio objective.
    }

    RatioObjective obj;
    const int n = k_domain.size();
    obj.num.assign(static_cast<std::size_t>(n), 0.0);
    obj.den.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < n; ++r) {
        const PointId p = k_domain.id_at(r);
        obj.num[static_cast<std::size_t>(r)] = in_a(p) ? 1.0 : 0.0;
        obj.den[static_cast<std::size_t>(r)] = in_b(p) ? 1.0 : 0.0;
    }
    out = BoundaryRatioBounds{};
    out.eps = eps;
    out.exact = false;
    if (auto lo = extremal_search(k_domain, eps, obj, Direction::Minimize, cfg)) {
        out.ratio_low = lo->value;
        out.witness_low = lo->lattice;
    }
    if (auto hi = extremal_search(k_domain, eps, obj, Direction::Maximize, cfg)) {
        out.ratio_high = hi->value;
        out.witness_high = hi->lattice;
    }
    return out;
}

ThinBoundaryResult thin_boundary_verdict(std::span<const PointId> a, std::span<const PointId> b,
                                         std::span<const Subspace> supersets,
                                         const Schedule& schedule, double tol, int stable_steps,
                                         std::size_t cap, const SearchConfig& cfg) {
    if (supersets.empty()) throw std::invalid_argument("need at least one ambient superset");
    if (stable_steps <= 0) throw std::invalid_argument("stable_steps must be positive");

    ThinBoundaryResult result;
    const std::vector<double> eps_values = schedule.values();
    bool all_stable = true;
    bool any_persistent_gap = false;
    std::vector<double> limits;

    for (const Subspace& k_domain : supersets) {
        std::vector<BoundaryRatioBounds> trail;
        for (double eps : eps_values)
            trail.push_back(boundary_ratio_bounds(a, b, k_domain, eps, cap, cfg));

        const int len = static_cast<int>(trail.size());
        const int window = std::min(stable_steps, len);
        bool stable = true, persistent = true, all_exact = true;
        std::optional<double> prev_mid;
        for (const BoundaryRatioBounds& t : trail) all_exact = all_exact && t.exact;
        for (int i = len - window; i < len; ++i) {
            const BoundaryRatioBounds& t = trail[static_cast<std::size_t>(i)];
            if (!t.exact || !t.ratio_low || !t.ratio_high) {
                stable = false;
                persistent = false;
                break;
            }
            const double gap = *t.ratio_high - *t.ratio_low;
            if (gap > tol) stable = false;
            if (gap < kNoMeanGapFloor) persistent = false;
            const double mid = 0.5 * (*t.ratio_low + *t.ratio_high);
            if (prev_mid && std::abs(mid - *prev_mid) > tol) stable = false;
            prev_mid = mid;
        }
        if (stable && prev_mid)
            limits.push_back(*prev_mid);
        else
            all_stable = false;
        if (persistent && all_exact) any_persistent_gap = true;
        result.trails.push_back(std::move(trail));
    }

    if (all_stable) {
        bool agree = true;
        for (double v : limits)
            if (std::abs(v - limits.front()) > tol) agree = false;
        if (agree) {
            result.verdict = BoundaryVerdict::ThinBoundary;
            result.value = limits.front();
            return result;
        }
    }
    result.verdict =
        any_persistent_gap ? BoundaryVerdict::NotThin : BoundaryVerdict::Inconclusive;
    return result;
}

CheckReport composition_check(std::span<const PointId> a, std::span<const PointId> b,
                              std::span<const PointId> c, const Subspace& k_domain,
                              const Schedule& schedule, double tol, int stable_steps,
                              std::size_t cap, const SearchConfig& cfg) {
    const std::vector<PointId> sa = sorted_unique(a);
    const std::vector<PointId> sb = sorted_unique(b);
    const std::vector<PointId> sc = sorted_unique(c);
    if (!subset_of(sa, sb) || !subset_of(sb, sc))
        throw std::invalid_argument("composition needs A within B within C");

    const std::vector<Subspace> ambient{k_domain};
    const auto ab = thin_boundary_verdict(sa, sb, ambient, schedule, tol, stable_steps, cap, cfg);
    const auto bc = thin_boundary_verdict(sb, sc, ambient, schedule, tol, stable_steps, cap, cfg);
    const auto ac = thin_boundary_verdict(sa, sc, ambient, schedule, tol, stable_steps, cap, cfg);

    CheckReport report;
    if (ab.verdict != BoundaryVerdict::ThinBoundary ||
        bc.verdict != BoundaryVerdict::ThinBoundary ||
        ac.verdict != BoundaryVerdict::ThinBoundary) {
        report.add_inconclusive("composition",
                                std::string("verdicts: (A|B)=") + to_string(ab.verdict) +
                                    " (B|C)=" + to_string(bc.verdict) +
                                    " (A|C)=" + to_string(ac.verdict));
        return report;
    }
    const double lhs = *ac.value;
    const double rhs = *ab.value * *bc.value;
    report.add("composition product", std::abs(lhs - rhs) <= tol,
               "(A|C)=" + fmt(lhs) + " vs (A|B)(B|C)=" + fmt(rhs));
    return report;
}

CheckReport disjoint_union_check(std::span<const std::vector<PointId>> parts,
                                 const Subspace& k_domain, double eps, std::size_t cap) {
    std::set<PointId> seen;
    std::vector<PointId> all;
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("parts must be nonempty");
        for (PointId p : part) {
            if (!seen.insert(p).second)
                throw std::invalid_argument("parts must be pairwise disjoint");
            all.push_back(p);
        }
    }
    const std::vector<PointId> united = sorted_unique(all);
    if (!subset_of(united, k_domain.ids()))
        throw std::invalid_argument("parts must live inside the domain");

    double sum_lower = 0.0, sum_upper = 0.0;
    for (const auto& part : parts) {
        const MeanBounds bp = bounds_exact(k_domain, indicator(part), eps, cap);
        sum_lower += bp.lower;
        sum_upper += bp.upper;
    }
    const MeanBounds bu = bounds_exact(k_domain, indicator(united), eps, cap);

    CheckReport report;
    report.add("union chain", leq_rel(sum_lower, bu.lower, kIdentitySlack) &&
                                  bu.lower <= bu.upper &&
                                  leq_rel(bu.upper, sum_upper, kIdentitySlack),
               fmt(sum_lower) + " <= " + fmt(bu.lower) + " <= " + fmt(bu.upper) + " <= " +
                   fmt(sum_upper));
    return report;
}

}  // namespace latmean
