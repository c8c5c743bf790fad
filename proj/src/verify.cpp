#include "latmean/verify.hpp"

#include "latmean/io.hpp"
#include "latmean/measure.hpp"
#include "latmean/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace latmean {

namespace {

constexpr double kIdentitySlack = 1e-12;

struct Tally {
    int passes = 0;
    int fails = 0;
    std::vector<std::string> reproducers;
};

class Registry {
public:
    explicit Registry(std::ostream& log) : log_(log) {}

    void record(const std::string& name, bool passed, const std::string& reproducer) {
        Tally& t = tallies_[name];
        if (passed) {
            ++t.passes;
        } else {
            ++t.fails;
            if (t.reproducers.size() < 4) t.reproducers.push_back(reproducer);
        }
    }

    void record(const CheckReport& report, const std::string& reproducer) {
        for (const CheckItem& item : report.items) {
            if (item.status == CheckStatus::Inconclusive) continue;
            record(item.name, item.status == CheckStatus::Pass,
                   reproducer + " [" + item.detail + "]");
        }
    }

    VerifySummary summarize() {
        VerifySummary s;
        for (const auto& [name, t] : tallies_) {
            s.checks_run += t.passes + t.fails;
            s.failures += t.fails;
            if (t.fails == 0) {
                log_ << "[PASS] " << name << " (" << t.passes << " checks)\n";
            } else {
                log_ << "[FAIL] " << name << " (" << t.fails << " of " << t.passes + t.fails
                     << " checks)\n";
                for (const auto& r : t.reproducers) log_ << "       " << r << "\n";
            }
        }
        return s;
    }

private:
    std::ostream& log_;
    std::map<std::string, Tally> tallies_;
};

MetricSpace random_cloud(Rng& rng, int n) {
    const int dim = 1 + static_cast<int>(rng.below(3));
    const bool snapped = rng.below(2) == 0;  // grid-snapped coords create exact ties
    std::vector<std::vector<double>> coords(static_cast<std::size_t>(n));
    for (auto& row : coords) {
        row.resize(static_cast<std::size_t>(dim));
        for (double& x : row)
            x = snapped ? 0.05 * static_cast<double>(rng.below(21)) : rng.unit();
    }
    // Coincident points conflict at every eps; keep the cloud a true metric.
    for (int i = 0; i < n; ++i) {
        for (int attempts = 0; attempts < 64; ++attempts) {
            bool duplicate = false;
            for (int j = 0; j < i && !duplicate; ++j)
                duplicate = coords[static_cast<std::size_t>(i)] ==
                            coords[static_cast<std::size_t>(j)];
            if (!duplicate) break;
            for (double& x : coords[static_cast<std::size_t>(i)]) x = rng.unit();
        }
    }
    const Metric metric = static_cast<Metric>(rng.below(3));
    return MetricSpace::from_coords(std::move(coords), metric);
}

MetricSpace random_repaired_matrix(Rng& rng, int n) {
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.1 + 1.9 * rng.unit();
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    }
    // Min-plus closure repairs every triangle violation.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                        d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    return MetricSpace::from_matrix(d);
}

FnSpec random_leaf_fn(Rng& rng, const Subspace& domain) {
    const bool has_coords = domain.parent().has_coords();
    const int kinds = has_coords ? 5 : 3;
    const int kind = static_cast<int>(rng.below(static_cast<std::uint64_t>(kinds)));
    switch (kind) {
        case 0:
            return FnSpec::constant(10.0 * rng.unit() - 5.0);
        case 1: {
            std::vector<double> values(static_cast<std::size_t>(domain.parent().size()), 0.0);
            for (double& v : values) v = 10.0 * rng.unit() - 5.0;
            return FnSpec::table(std::move(values));
        }
        case 2: {
            std::vector<PointId> ids;
            for (PointId p : domain.ids())
                if (rng.below(2) == 0) ids.push_back(p);
            return indicator(std::move(ids));
        }
        case 3:
            return FnSpec::coordinate(static_cast<int>(rng.below(
                static_cast<std::uint64_t>(domain.parent().dim()))));
        default: {
            const int axis =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(domain.parent().dim())));
            std::vector<double> coeffs(1 + rng.below(3));
            for (double& c : coeffs) c = 4.0 * rng.unit() - 2.0;
            return FnSpec::polynomial(axis, std::move(coeffs));
        }
    }
}

FnSpec random_fn(Rng& rng, const Subspace& domain) {
    if (rng.below(5) == 0) {
        FnSpec f = random_leaf_fn(rng, domain);
        FnSpec g = random_leaf_fn(rng, domain);
        return combine(4.0 * rng.unit() - 2.0, std::move(f), 4.0 * rng.unit() - 2.0,
                       std::move(g));
    }
    return random_leaf_fn(rng, domain);
}

double pick_eps(Rng& rng, const Subspace& domain) {
    const double diam = diameter(domain);
    const double min_pos = min_positive_distance(domain);
    switch (rng.below(5)) {
        case 0: {  // exact pairwise distance: exercises the boundary rule
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
            return diam > 0.0 ? diam * 1.5 : 1.0;  // singleton regime
        case 2:
            return min_pos > 0.0 ? min_pos * 0.9 : 1e-3;  // whole-domain regime
        default:
            return std::max(1e-6, rng.unit() * diam * 1.2);
    }
}

void run_instance(Registry& registry, const VerifyOptions& opt, int index) {
    Rng rng = Rng(opt.seed).fork(static_cast<std::uint64_t>(index));
    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_n - 1)));
    const MetricSpace space =
        rng.below(2) == 0 ? random_cloud(rng, n) : random_repaired_matrix(rng, n);
    const Subspace domain(space);
    const double eps = pick_eps(rng, domain);

    std::ostringstream os;
    os << "seed=" << opt.seed << " instance=" << index << " n=" << n << " eps="
       << format_double(eps);
    const std::string repro = os.str();

    const FnSpec f = random_fn(rng, domain);
    const FnSpec g = random_fn(rng, domain);
    const double alpha = 8.0 * rng.unit() - 4.0;
    const double beta = 8.0 * rng.unit() - 4.0;

    registry.record(algebra_check(domain, f, g, alpha, beta, eps, opt.cap), repro);

    // Pointwise dominance built by construction: f >= f - |h|.
    {
        std::vector<double> drop(static_cast<std::size_t>(space.size()), 0.0);
        for (double& v : drop) v = -3.0 * rng.unit();
        const FnSpec dominated = combine(1.0, f, 1.0, FnSpec::table(std::move(drop)));
        CheckReport r = algebra_check(domain, f, dominated, 1.0, 1.0, eps, opt.cap);
        for (const CheckItem& item : r.items)
            if (item.name.rfind("monotone", 0) == 0)
                registry.record(item.name, item.status != CheckStatus::Fail,
                                repro + " [" + item.detail + "]");
    }

    const MeanBounds bf = bounds_exact(domain, f, eps, opt.cap);

    // Constant shift moves both bounds by exactly the constant.
    {
        const double c = 10.0 * rng.unit() - 5.0;
        const MeanBounds shifted =
            bounds_exact(domain, combine(1.0, f, c, FnSpec::constant(1.0)), eps, opt.cap);
        registry.record("constant shift",
                        eq_rel(shifted.lower, bf.lower + c, kIdentitySlack) &&
                            eq_rel(shifted.upper, bf.upper + c, kIdentitySlack),
                        repro);
    }

    // Witnesses must achieve the reported bounds.
    registry.record("witness achieves bounds",
                    sample_mean(f, domain, bf.witness_low) == bf.lower &&
                        sample_mean(f, domain, bf.witness_high) == bf.upper,
                    repro);

    // Heuristic bounds stay inside the exact interval.
    {
        SearchConfig cfg;
        cfg.rng_seed = rng.next();
        const MeanBounds bh = bounds_heuristic(domain, f, eps, cfg);
        registry.record("heuristic containment",
                        bh.lower >= bf.lower - kIdentitySlack &&
                            bh.upper <= bf.upper + kIdentitySlack,
                        repro);
    }

    // Regime identities.
    if (eps > diameter(domain)) {
        const auto [fmin, fmax] = value_range(f, domain);
        registry.record("singleton regime",
                        bf.lattice_count == static_cast<std::size_t>(domain.size()) &&
                            eq_rel(bf.lower, fmin, kIdentitySlack) &&
                            eq_rel(bf.upper, fmax, kIdentitySlack),
                        repro);
    }
    const double min_pos = min_positive_distance(domain);
    if (min_pos > 0.0 && eps <= min_pos) {
        const double whole = sample_mean(f, space, domain.ids());
        registry.record("whole-domain regime",
                        bf.lattice_count == 1u && eq_rel(bf.lower, whole, kIdentitySlack) &&
                            eq_rel(bf.upper, whole, kIdentitySlack),
                        repro);
    }

    // Complement inequalities over a random subset.
    {
        std::vector<PointId> a;
        for (PointId p : domain.ids())
            if (rng.below(2) == 0) a.push_back(p);
        registry.record(complement_check(a, domain, eps, opt.cap), repro);
    }

    // Disjoint-union chain over a random partial partition.
    {
        const auto parts_wanted = 1 + rng.below(4);
        std::vector<std::vector<PointId>> parts(static_cast<std::size_t>(parts_wanted));
        for (PointId p : domain.ids()) {
            const auto slot = rng.below(parts_wanted + 1);
            if (slot < parts_wanted) parts[static_cast<std::size_t>(slot)].push_back(p);
        }
        std::erase_if(parts, [](const auto& part) { return part.empty(); });
        if (!parts.empty())
            registry.record(disjoint_union_check(parts, domain, eps, opt.cap), repro);
    }

    // Finite modification bound.
    {
        std::vector<PointId> pts;
        std::vector<double> deltas;
        const auto count = 1 + rng.below(3);
        for (std::uint64_t i = 0; i < count; ++i) {
            const PointId p = domain.ids()[rng.below(domain.ids().size())];
            if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
            pts.push_back(p);
            deltas.push_back(4.0 * rng.unit() - 2.0);
        }
        registry.record(finite_modification_check(domain, f, pts, deltas, eps, opt.cap), repro);
    }
}

/// Uniform-limit drift: perturbations f + g/n keep the estimate within
/// max|g|/n of the base estimate.
void run_uniform_limit(Registry& registry, const VerifyOptions& opt) {
    Rng rng = Rng(opt.seed).fork(0x756c696dULL);
    const int grid_n = 33;
    std::vector<std::vector<double>> coords;
    coords.reserve(grid_n);
    for (int k = 0; k < grid_n; ++k)
        coords.push_back({static_cast<double>(k) / (grid_n - 1)});
    const MetricSpace space = MetricSpace::from_coords(std::move(coords), Metric::Euclidean);
    const Subspace domain(space);

    std::vector<double> gvals(static_cast<std::size_t>(grid_n), 0.0);
    for (double& v : gvals) v = 2.0 * rng.unit() - 1.0;
    const FnSpec f = FnSpec::coordinate(0);
    const FnSpec g = FnSpec::table(std::move(gvals));
    const double g_max = max_abs(g, domain);

    const Schedule schedule{0.25, 0.5, 6};
    const SweepTolerances tols;
    const SearchConfig cfg;
    const SweepResult base = sweep(domain, f, schedule, tols, opt.cap, cfg);
    bool ok = base.verdict == MeanVerdict::HasMean;
    std::string detail = "base sweep verdict: " + std::string(to_string(base.verdict));
    if (ok) {
        for (int n : {1, 2, 4, 8}) {
            const FnSpec fn = combine(1.0, f, 1.0 / n, g);
            const SweepResult s = sweep(domain, fn, schedule, tols, opt.cap, cfg);
            if (s.verdict != MeanVerdict::HasMean ||
                std::abs(*s.mean_estimate - *base.mean_estimate) > g_max / n + 1e-9) {
                ok = false;
                detail = "drift exceeded at n=" + std::to_string(n);
                break;
            }
        }
    }
    registry.record("uniform limit drift", ok, "seed=" + std::to_string(opt.seed) + " " + detail);
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& options, std::ostream& log) {
    Registry registry(log);
    for (int i = 0; i < options.instances; ++i) run_instance(registry, options, i);
    run_uniform_limit(registry, options);
    VerifySummary summary = registry.summarize();
    log << "verify: " << summary.checks_run << " checks, " << summary.failures << " failures\n";
    return summary;
}

}  // namespace latmean
