#include "latmean/mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latmean {

namespace {

constexpr double kIdentitySlack = 1e-12;

std::vector<double> values_by_id(const FnSpec& f, const Subspace& domain) {
    std::vector<double> vals(static_cast<std::size_t>(domain.parent().size()),
                             std::numeric_limits<double>::quiet_NaN());
    for (PointId p : domain.ids()) vals[static_cast<std::size_t>(p)] = eval(f, domain.parent(), p);
    return vals;
}

double mean_over(const std::vector<double>& vals, std::span<const PointId> members) {
    double s = 0.0;
    for (PointId p : members) s += vals[static_cast<std::size_t>(p)];
    return s / static_cast<double>(members.size());
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

double sample_mean(const FnSpec& f, const MetricSpace& space, std::span<const PointId> points) {
    if (points.empty()) throw std::invalid_argument("sample mean of an empty set");
    std::vector<PointId> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    double s = 0.0;
    for (PointId p : sorted) s += eval(f, space, p);
    return s / static_cast<double>(sorted.size());
}

double sample_mean(const FnSpec& f, const Subspace& domain, const Lattice& lattice) {
    return sample_mean(f, domain.parent(), lattice.members);
}

MeanBounds bounds_exact(const Subspace& domain, const FnSpec& f, double eps, std::size_t cap) {
    validate_fn(f, domain);
    const std::vector<double> vals = values_by_id(f, domain);

    MeanBounds out;
    out.eps = eps;
    out.exact = true;
    std::size_t count = 0;
    int min_size = domain.size() + 1;
    bool first = true;
    std::vector<PointId> low_members, high_members;

    for_each_lattice(domain, eps, cap, [&](std::span<const PointId> members) {
        const double m = mean_over(vals, members);
        ++count;
        min_size = std::min(min_size, static_cast<int>(members.size()));
        const std::vector<PointId> as_vec(members.begin(), members.end());
        if (first || m < out.lower || (m == out.lower && as_vec < low_members)) {
            out.lower = m;
            low_members = as_vec;
        }
        if (first || m > out.upper || (m == out.upper && as_vec < high_members)) {
            out.upper = m;
            high_members = as_vec;
        }
        first = false;
    });

    out.witness_low = {std::move(low_members), eps};
    out.witness_high = {std::move(high_members), eps};
    out.lattice_count = count;
    out.min_lattice_size = min_size;
    return out;
}

MeanBounds bounds_heuristic(const Subspace& domain, const FnSpec& f, double eps,
                            const SearchConfig& cfg) {
    // Both directions share per-restart starting lattices (same seed
    // derivation), so the reported interval is never empty.
    const BoundEstimate lo = extremal_average(domain, eps, f, Direction::Minimize, cfg);
    const BoundEstimate hi = extremal_average(domain, eps, f, Direction::Maximize, cfg);
    MeanBounds out;
    out.eps = eps;
    out.exact = false;
    out.lower = lo.value;
    out.upper = hi.value;
    out.witness_low = lo.lattice;
    out.witness_high = hi.lattice;
    return out;
}

MeanBounds bounds_auto(const Subspace& domain, const FnSpec& f, double eps, std::size_t cap,
                       const SearchConfig& cfg) {
    try {
        return bounds_exact(domain, f, eps, cap);
    } catch (const CapExceeded&) {
        return bounds_heuristic(domain, f, eps, cfg);
    }
}

std::vector<double> Schedule::values() const {
    if (!(eps0 > 0.0)) throw std::invalid_argument("schedule eps0 must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("schedule ratio must be in (0,1)");
    if (steps <= 0) throw std::invalid_argument("schedule needs at least one step");
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(steps));
    double eps = eps0;
    for (int k = 0; k < steps; ++k) {
        v.push_back(eps);
        eps *= ratio;
    }
    return v;
}

const char* to_string(MeanVerdict v) {
    switch (v) {
        case MeanVerdict::HasMean: return "HasMean";
        case MeanVerdict::NoMean: return "NoMean";
        case MeanVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(GrowthVerdict v) {
    switch (v) {
        case GrowthVerdict::GrowingUnboundedLikely: return "GrowingUnbounded-likely";
        case GrowthVerdict::Bounded: return "Bounded";
        case GrowthVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

SweepResult sweep(const Subspace& domain, const FnSpec& f, const Schedule& schedule,
                  const SweepTolerances& tols, std::size_t cap, const SearchConfig& cfg) {
    if (tols.stable_steps <= 0) throw std::invalid_argument("stable_steps must be positive");
    SweepResult result;
    for (double eps : schedule.values()) result.trail.push_back(bounds_auto(domain, f, eps, cap, cfg));

    result.gap_floor = std::numeric_limits<double>::infinity();
    bool all_exact = true;
    for (const MeanBounds& b : result.trail) {
        result.gap_floor = std::min(result.gap_floor, b.gap());
        all_exact = all_exact && b.exact;
    }

    const int len = static_cast<int>(result.trail.size());
    const int window = std::min(tols.stable_steps, len);
    bool gap_ok = true, drift_ok = true, persistent_gap = true;
    for (int i = len - window; i < len; ++i) {
        const MeanBounds& b = result.trail[static_cast<std::size_t>(i)];
        if (b.gap() > tols.tol_gap) gap_ok = false;
        if (b.gap() < kNoMeanGapFloor) persistent_gap = false;
        if (i > len - window &&
            std::abs(b.midpoint() - result.trail[static_cast<std::size_t>(i - 1)].midpoint()) >
                tols.tol_drift)
            drift_ok = false;
    }

    if (gap_ok && drift_ok) {
        result.verdict = MeanVerdict::HasMean;
        result.mean_estimate = result.trail.back().midpoint();
    } else if (persistent_gap && all_exact) {
        // Heuristic gaps under-estimate; only an all-exact trail can attest a
        // persistent gap.
        result.verdict = MeanVerdict::NoMean;
    } else {
        result.verdict = MeanVerdict::Inconclusive;
    }
    return result;
}

RegularityProfile regularity_profile(const Subspace& domain, const Schedule& schedule,
                                     std::size_t node_cap, const SearchConfig& cfg) {
    RegularityProfile profile;
    for (double eps : schedule.values()) {
        const MinLatticeSize m = min_lattice_size(domain, eps, node_cap, cfg);
        profile.steps.push_back({eps, m.size, m.exact});
    }
    // A finite domain plateaus at its own size once eps is below the minimum
    // positive spacing; that is the strongest statement a single space allows.
    const RegularityStep& last = profile.steps.back();
    profile.verdict = (last.exact && last.min_size == domain.size()) ? GrowthVerdict::Bounded
                                                                     : GrowthVerdict::Inconclusive;
    return profile;
}

RegularityProfile regularity_family(std::span<const std::pair<Subspace, double>> family,
                                    std::size_t node_cap, const SearchConfig& cfg) {
    RegularityProfile profile;
    bool all_exact = true;
    for (const auto& [domain, eps] : family) {
        const MinLatticeSize m = min_lattice_size(domain, eps, node_cap, cfg);
        profile.steps.push_back({eps, m.size, m.exact});
        all_exact = all_exact && m.exact;
    }
    bool strictly_increasing = profile.steps.size() >= 2;
    for (std::size_t i = 1; i < profile.steps.size(); ++i)
        if (profile.steps[i].min_size <= profile.steps[i - 1].min_size)
            strictly_increasing = false;
    if (!all_exact)
        profile.verdict = GrowthVerdict::Inconclusive;
    else if (strictly_increasing)
        profile.verdict = GrowthVerdict::GrowingUnboundedLikely;
    else
        profile.verdict = GrowthVerdict::Bounded;
    return profile;
}

CheckReport algebra_check(const Subspace& domain, const FnSpec& f, const FnSpec& g, double alpha,
                          double beta, double eps, std::size_t cap) {
    CheckReport report;
    const MeanBounds bf = bounds_exact(domain, f, eps, cap);
    const MeanBounds bg = bounds_exact(domain, g, eps, cap);

    const FnSpec neg_f = combine(-1.0, f, 0.0, FnSpec::constant(0.0));
    const MeanBounds bneg = bounds_exact(domain, neg_f, eps, cap);
    report.add("negation lower", eq_rel(bneg.lower, -bf.upper, kIdentitySlack),
               "l(-f)=" + fmt(bneg.lower) + " vs -u(f)=" + fmt(-bf.upper));
    report.add("negation upper", eq_rel(bneg.upper, -bf.lower, kIdentitySlack),
               "u(-f)=" + fmt(bneg.upper) + " vs -l(f)=" + fmt(-bf.lower));

    const FnSpec alpha_f = combine(alpha, f, 0.0, FnSpec::constant(0.0));
    const MeanBounds balpha = bounds_exact(domain, alpha_f, eps, cap);
    if (alpha >= 0.0) {
        report.add("homogeneity lower", eq_rel(balpha.lower, alpha * bf.lower, kIdentitySlack),
                   "l(af)=" + fmt(balpha.lower) + " vs a*l(f)=" + fmt(alpha * bf.lower));
        report.add("homogeneity upper", eq_rel(balpha.upper, alpha * bf.upper, kIdentitySlack),
                   "u(af)=" + fmt(balpha.upper) + " vs a*u(f)=" + fmt(alpha * bf.upper));
    } else {
        // Negative scaling swaps the extremes.
        report.add("homogeneity lower", eq_rel(balpha.lower, alpha * bf.upper, kIdentitySlack),
                   "l(af)=" + fmt(balpha.lower) + " vs a*u(f)=" + fmt(alpha * bf.upper));
        report.add("homogeneity upper", eq_rel(balpha.upper, alpha * bf.lower, kIdentitySlack),
                   "u(af)=" + fmt(balpha.upper) + " vs a*l(f)=" + fmt(alpha * bf.lower));
    }

    const FnSpec beta_g = combine(beta, g, 0.0, FnSpec::constant(0.0));
    const MeanBounds bbeta = bounds_exact(domain, beta_g, eps, cap);
    const FnSpec fg = combine(alpha, f, beta, g);
    const MeanBounds bsum = bounds_exact(domain, fg, eps, cap);
    const bool chain = leq_rel(balpha.lower + bbeta.lower, bsum.lower, kIdentitySlack) &&
                       bsum.lower <= bsum.upper &&
                       leq_rel(bsum.upper, balpha.upper + bbeta.upper, kIdentitySlack);
    report.add("subadditivity chain", chain,
               fmt(balpha.lower + bbeta.lower) + " <= " + fmt(bsum.lower) + " <= " +
                   fmt(bsum.upper) + " <= " + fmt(balpha.upper + bbeta.upper));

    bool dominates = true;
    for (PointId p : domain.ids())
        if (eval(f, domain.parent(), p) < eval(g, domain.parent(), p)) dominates = false;
    if (dominates) {
        report.add("monotone lower", leq_rel(bg.lower, bf.lower, kIdentitySlack),
                   "l(g)=" + fmt(bg.lower) + " <= l(f)=" + fmt(bf.lower));
        report.add("monotone upper", leq_rel(bg.upper, bf.upper, kIdentitySlack),
                   "u(g)=" + fmt(bg.upper) + " <= u(f)=" + fmt(bf.upper));
    } else {
        report.add_inconclusive("monotone", "f does not dominate g pointwise");
    }

    const auto [fmin, fmax] = value_range(f, domain);
    report.add("constant lower bound",
               leq_rel(fmin, bf.lower, kIdentitySlack) && leq_rel(fmin, bf.upper, kIdentitySlack),
               "min f=" + fmt(fmin) + " <= l=" + fmt(bf.lower));
    report.add("constant upper bound",
               leq_rel(bf.upper, fmax, kIdentitySlack) && leq_rel(bf.lower, fmax, kIdentitySlack),
               "u=" + fmt(bf.upper) + " <= max f=" + fmt(fmax));
    return report;
}

CheckReport finite_modification_check(const Subspace& domain, const FnSpec& f,
                                      std::span<const PointId> points,
                                      std::span<const double> deltas, double eps,
                                      std::size_t cap) {
    if (points.size() != deltas.size())
        throw std::invalid_argument("modification points and deltas must align");
    CheckReport report;

    FnSpec g = f;
    double max_delta = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        g = combine(1.0, std::move(g), deltas[i], indicator({points[i]}));
        max_delta = std::max(max_delta, std::abs(deltas[i]));
    }

    const MeanBounds bf = bounds_exact(domain, f, eps, cap);
    const MeanBounds bg = bounds_exact(domain, g, eps, cap);
    const double m = static_cast<double>(points.size());
    const double bound = bf.min_lattice_size && *bf.min_lattice_size > 0
                             ? m * max_delta / static_cast<double>(*bf.min_lattice_size)
                             : 0.0;

    report.add("modification lower shift",
               leq_rel(std::abs(bg.lower - bf.lower), bound, kIdentitySlack),
               "|dl|=" + fmt(std::abs(bg.lower - bf.lower)) + " <= " + fmt(bound));
    report.add("modification upper shift",
               leq_rel(std::abs(bg.upper - bf.upper), bound, kIdentitySlack),
               "|du|=" + fmt(std::abs(bg.upper - bf.upper)) + " <= " + fmt(bound));
    return report;
}

}  // namespace latmean
