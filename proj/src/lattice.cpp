#include "latmean/lattice.hpp"

#include "latmean/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace latmean {

namespace {

void require_positive_eps(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

/// Rank of each id within the domain, or throws for foreign ids.
int rank_of(const Subspace& domain, PointId id) {
    const auto& ids = domain.ids();
    const auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id)
        throw std::invalid_argument("point id is not a member of the domain");
    return static_cast<int>(it - ids.begin());
}

std::vector<PointId> ranks_to_ids(const Subspace& domain, const std::vector<int>& ranks) {
    std::vector<PointId> out;
    out.reserve(ranks.size());
    for (int r : ranks) out.push_back(domain.id_at(r));
    return out;
}

}  // namespace

ConflictGraph ConflictGraph::build(const Subspace& domain, double eps, double tie_tol) {
    require_positive_eps(eps);
    if (tie_tol < 0.0) throw std::invalid_argument("tie tolerance must be nonnegative");
    ConflictGraph g;
    g.n = domain.size();
    g.eps = eps;
    g.tie_tol = tie_tol;
    g.adj.assign(static_cast<std::size_t>(g.n), Bits(g.n));
    for (int a = 0; a < g.n; ++a) {
        for (int b = a + 1; b < g.n; ++b) {
            if (domain.distance(domain.id_at(a), domain.id_at(b)) < eps + tie_tol) {
                g.adj[static_cast<std::size_t>(a)].set(b);
                g.adj[static_cast<std::size_t>(b)].set(a);
            }
        }
    }
    return g;
}

bool is_dispersion(const Subspace& domain, std::span<const PointId> subset, double eps,
                   double tie_tol) {
    require_positive_eps(eps);
    for (PointId p : subset) rank_of(domain, p);  // membership check
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            if (domain.distance(subset[a], subset[b]) < eps + tie_tol) return false;
    return true;
}

bool is_lattice(const Subspace& domain, std::span<const PointId> subset, double eps,
                double tie_tol) {
    if (!is_dispersion(domain, subset, eps, tie_tol)) return false;
    std::vector<PointId> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    for (PointId q : domain.ids()) {
        if (std::binary_search(sorted.begin(), sorted.end(), q)) continue;
        bool conflicts = false;
        for (PointId m : sorted) {
            if (domain.distance(q, m) < eps + tie_tol) {
                conflicts = true;
                break;
            }
        }
        if (!conflicts) return false;  // q could be added
    }
    return true;
}

namespace {

/// Pivoted Bron-Kerbosch over the complement of the conflict graph: maximal
/// cliques there are exactly the maximal independent sets here.
class LatticeEnumerator {
public:
    LatticeEnumerator(const Subspace& domain, double eps, std::size_t cap,
                      const std::function<void(std::span<const PointId>)>& emit)
        : domain_(domain), cap_(cap), emit_(emit) {
        const ConflictGraph g = ConflictGraph::build(domain, eps);
        n_ = g.n;
        comp_.reserve(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            Bits c = g.adj[static_cast<std::size_t>(v)].complement();
            c.reset(v);
            comp_.push_back(std::move(c));
        }
    }

    void run() {
        Bits p(n_), x(n_);
        p.set_all();
        expand(p, x);
    }

private:
    void expand(Bits p, Bits x) {
        if (p.none() && x.none()) {
            if (++count_ > cap_) throw CapExceeded(cap_);
            std::vector<int> ranks = current_;
            std::sort(ranks.begin(), ranks.end());
            buffer_.clear();
            for (int r : ranks) buffer_.push_back(domain_.id_at(r));
            emit_(buffer_);
            return;
        }
        // Pivot on the vertex covering most of P.
        int pivot = -1, best = -1;
        Bits px = p;
        px |= x;
        px.for_each([&](int u) {
            const int c = p.count_and(comp_[static_cast<std::size_t>(u)]);
            if (c > best) {
                best = c;
                pivot = u;
            }
        });
        Bits candidates = p;
        candidates.and_not(comp_[static_cast<std::size_t>(pivot)]);
        candidates.for_each([&](int v) {
            const Bits& cv = comp_[static_cast<std::size_t>(v)];
            current_.push_back(v);
            expand(p & cv, x & cv);
            current_.pop_back();
            p.reset(v);
            x.set(v);
        });
    }

    const Subspace& domain_;
    std::size_t cap_;
    const std::function<void(std::span<const PointId>)>& emit_;
    int n_ = 0;
    std::vector<Bits> comp_;
    std::vector<int> current_;
    std::vector<PointId> buffer_;
    std::size_t count_ = 0;
};

}  // namespace

void for_each_lattice(const Subspace& domain, double eps, std::size_t cap,
                      const std::function<void(std::span<const PointId>)>& emit) {
    LatticeEnumerator(domain, eps, cap, emit).run();
}

std::vector<Lattice> enumerate_lattices(const Subspace& domain, double eps, std::size_t cap) {
    std::vector<std::vector<PointId>> sets;
    for_each_lattice(domain, eps, cap, [&](std::span<const PointId> members) {
        sets.emplace_back(members.begin(), members.end());
    });
    std::sort(sets.begin(), sets.end());
    std::vector<Lattice> out;
    out.reserve(sets.size());
    for (auto& s : sets) out.push_back({std::move(s), eps});
    return out;
}

Lattice greedy_lattice(const Subspace& domain, double eps, std::span<const PointId> order) {
    require_positive_eps(eps);
    std::vector<PointId> check(order.begin(), order.end());
    std::sort(check.begin(), check.end());
    if (check != domain.ids())
        throw std::invalid_argument("order must be a permutation of the domain ids");

    std::vector<PointId> chosen;
    for (PointId p : order) {
        bool conflicts = false;
        for (PointId m : chosen) {
            if (domain.distance(p, m) < eps) {
                conflicts = true;
                break;
            }
        }
        if (!conflicts) chosen.push_back(p);
    }
    std::sort(chosen.begin(), chosen.end());
    return {std::move(chosen), eps};
}

Lattice random_lattice(const Subspace& domain, double eps, std::uint64_t seed) {
    std::vector<PointId> order = domain.ids();
    Rng rng(seed);
    rng.shuffle(order);
    return greedy_lattice(domain, eps, order);
}

namespace {

struct SearchState {
    Bits members;
    std::vector<int> ranks;  // sorted ascending
    double num = 0.0;
    double den = 0.0;

    bool valid() const { return den > 0.0; }
    double value() const { return num / den; }
};

class LatticeSearch {
public:
    LatticeSearch(const Subspace& domain, double eps, const RatioObjective& objective,
                  Direction direction, const SearchConfig& cfg)
        : domain_(domain), obj_(objective), dir_(direction), cfg_(cfg) {
        require_positive_eps(eps);
        if (cfg.restarts <= 0) throw std::invalid_argument("restarts must be positive");
        if (cfg.anneal && !(cfg.cooling > 0.0 && cfg.cooling < 1.0))
            throw std::invalid_argument("cooling ratio must be in (0,1)");
        graph_ = ConflictGraph::build(domain, eps);
        n_ = graph_.n;
        if (static_cast<int>(obj_.num.size()) != n_ || static_cast<int>(obj_.den.size()) != n_)
            throw std::invalid_argument("objective weights must cover the domain");
        max_moves_ = cfg.max_moves > 0 ? cfg.max_moves : 10 * n_;

        // Static candidate order for re-maximalization: by per-point objective
        // contribution (zero-denominator points are neutral and go last),
        // then by rank.
        order_.resize(static_cast<std::size_t>(n_));
        for (int r = 0; r < n_; ++r) order_[static_cast<std::size_t>(r)] = r;
        const double worst = dir_ == Direction::Minimize
                                 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        auto key = [&](int r) {
            const auto i = static_cast<std::size_t>(r);
            return obj_.den[i] > 0.0 ? obj_.num[i] / obj_.den[i] : worst;
        };
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            const double ka = key(a), kb = key(b);
            if (ka != kb) return dir_ == Direction::Minimize ? ka < kb : ka > kb;
            return a < b;
        });
    }

    std::optional<BoundEstimate> run() {
        const Rng base(cfg_.rng_seed);
        for (int restart = 0; restart < cfg_.restarts; ++restart) {
            Rng rng = base.fork(static_cast<std::uint64_t>(restart));
            std::vector<int> perm(static_cast<std::size_t>(n_));
            for (int r = 0; r < n_; ++r) perm[static_cast<std::size_t>(r)] = r;
            rng.shuffle(perm);

            SearchState cur = greedy_from(perm);
            consider(cur);
            double temperature = cfg_.initial_temperature;
            for (int move = 0; move < max_moves_; ++move) {
                const auto victim_idx = rng.below(cur.ranks.size());
                const int victim = cur.ranks[static_cast<std::size_t>(victim_idx)];
                SearchState next = remaximalize(cur, victim);
                consider(next);
                if (next.ranks != cur.ranks && accept(cur, next, temperature, rng))
                    cur = std::move(next);
                temperature *= cfg_.cooling;
            }
        }
        if (!best_) return std::nullopt;
        return BoundEstimate{Lattice{ranks_to_ids(domain_, best_->ranks), graph_.eps},
                             best_->value()};
    }

private:
    SearchState greedy_from(const std::vector<int>& order) {
        Bits free(n_);
        free.set_all();
        SearchState s{Bits(n_), {}, 0.0, 0.0};
        for (int r : order) {
            if (!free.test(r)) continue;
            s.members.set(r);
            free.and_not(graph_.adj[static_cast<std::size_t>(r)]);
            free.reset(r);
        }
        finish(s);
        return s;
    }

    SearchState remaximalize(const SearchState& from, int victim) {
        SearchState s{from.members, {}, 0.0, 0.0};
        s.members.reset(victim);
        Bits blocked = s.members;
        s.members.for_each(
            [&](int m) { blocked |= graph_.adj[static_cast<std::size_t>(m)]; });
        Bits free = blocked.complement();
        for (int r : order_) {
            if (!free.test(r)) continue;
            s.members.set(r);
            free.and_not(graph_.adj[static_cast<std::size_t>(r)]);
            free.reset(r);
        }
        finish(s);
        return s;
    }

    void finish(SearchState& s) {
        s.ranks.clear();
        s.num = s.den = 0.0;
        s.members.for_each([&](int r) {
            s.ranks.push_back(r);
            s.num += obj_.num[static_cast<std::size_t>(r)];
            s.den += obj_.den[static_cast<std::size_t>(r)];
        });
    }

    bool improves(double candidate, double incumbent) const {
        return dir_ == Direction::Minimize ? candidate < incumbent : candidate > incumbent;
    }

    bool accept(const SearchState& cur, const SearchState& next, double temperature, Rng& rng) {
        if (!next.valid()) return false;
        if (!cur.valid()) return true;
        const double cv = cur.value(), nv = next.value();
        if (improves(nv, cv)) return true;
        if (nv == cv) return next.ranks < cur.ranks;
        if (cfg_.anneal && temperature > 0.0)
            return rng.unit() < std::exp(-std::abs(nv - cv) / temperature);
        return false;
    }

    void consider(const SearchState& s) {
        if (!s.valid()) return;
        if (!best_ || improves(s.value(), best_->value()) ||
            (s.value() == best_->value() && s.ranks < best_->ranks))
            best_ = s;
    }

    const Subspace& domain_;
    RatioObjective obj_;
    Direction dir_;
    SearchConfig cfg_;
    ConflictGraph graph_;
    int n_ = 0;
    int max_moves_ = 0;
    std::vector<int> order_;
    std::optional<SearchState> best_;
};

}  // namespace

std::optional<BoundEstimate> extremal_search(const Subspace& domain, double eps,
                                             const RatioObjective& objective, Direction direction,
                                             const SearchConfig& cfg) {
    return LatticeSearch(domain, eps, objective, direction, cfg).run();
}

BoundEstimate extremal_average(const Subspace& domain, double eps, const FnSpec& f,
                               Direction direction, const SearchConfig& cfg) {
    validate_fn(f, domain);
    RatioObjective obj;
    const int n = domain.size();
    obj.num.resize(static_cast<std::size_t>(n));
    obj.den.assign(static_cast<std::size_t>(n), 1.0);
    for (int r = 0; r < n; ++r)
        obj.num[static_cast<std::size_t>(r)] = eval(f, domain.parent(), domain.id_at(r));
    auto result = extremal_search(domain, eps, obj, direction, cfg);
    assert(result.has_value());  // unit denominators: every lattice is valid
    return *result;
}

namespace {

/// Branch and bound for the smallest independent dominating set of the
/// conflict graph, which is exactly the smallest lattice.
class MinSizeSearch {
public:
    MinSizeSearch(const Subspace& domain, double eps, std::size_t node_cap,
                  const SearchConfig& cfg)
        : domain_(domain), node_cap_(node_cap) {
        graph_ = ConflictGraph::build(domain, eps);
        n_ = graph_.n;
        closed_.reserve(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            Bits c = graph_.adj[static_cast<std::size_t>(v)];
            c.set(v);
            closed_.push_back(std::move(c));
        }
        // Two-step balls for the disjoint-dominator packing bound.
        ball2_.reserve(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) {
            Bits b = closed_[static_cast<std::size_t>(v)];
            closed_[static_cast<std::size_t>(v)].for_each(
                [&](int u) { b |= closed_[static_cast<std::size_t>(u)]; });
            ball2_.push_back(std::move(b));
        }

        // Incumbent from greedy and a few random permutations.
        best_size_ = n_ + 1;
        seed_incumbent(greedy_lattice(domain, eps, domain.ids()));
        const Rng base(cfg.rng_seed);
        for (int restart = 0; restart < cfg.restarts; ++restart) {
            Rng rng = base.fork(static_cast<std::uint64_t>(restart));
            std::vector<PointId> order = domain.ids();
            rng.shuffle(order);
            seed_incumbent(greedy_lattice(domain, eps, order));
        }
    }

    MinLatticeSize run() {
        Bits dominated(n_);
        std::vector<int> stack;
        branch(dominated, stack);
        return {best_size_, completed_, Lattice{best_ids_, graph_.eps}};
    }

private:
    void seed_incumbent(const Lattice& lattice) {
        if (static_cast<int>(lattice.members.size()) < best_size_) {
            best_size_ = static_cast<int>(lattice.members.size());
            best_ids_ = lattice.members;
        }
    }

    // Two complementary lower bounds on the vertices still needed: a greedy
    // packing of pairwise-independent demands (disjoint two-step balls force
    // distinct dominators), and undominated count over the best single-vertex
    // coverage. Dominators must themselves be undominated, so both quantify
    // over the undominated set only.
    int lower_bound(const Bits& undominated) const {
        Bits rest = undominated;
        int packed = 0;
        while (rest.any()) {
            const int w = rest.find_first();
            ++packed;
            rest.and_not(ball2_[static_cast<std::size_t>(w)]);
        }
        int max_cover = 1;
        undominated.for_each([&](int u) {
            max_cover =
                std::max(max_cover, closed_[static_cast<std::size_t>(u)].count_and(undominated));
        });
        const int by_cover = (undominated.count() + max_cover - 1) / max_cover;
        return std::max(packed, by_cover);
    }

    void branch(const Bits& dominated, std::vector<int>& stack) {
        if (++nodes_ > node_cap_) {
            completed_ = false;
            return;
        }
        const Bits undominated = dominated.complement();
        if (undominated.none()) {
            if (static_cast<int>(stack.size()) < best_size_) {
                best_size_ = static_cast<int>(stack.size());
                std::vector<int> ranks = stack;
                std::sort(ranks.begin(), ranks.end());
                best_ids_ = ranks_to_ids(domain_, ranks);
            }
            return;
        }
        if (static_cast<int>(stack.size()) + lower_bound(undominated) >= best_size_) return;

        // The lowest undominated vertex must gain a dominator from its own
        // closed neighborhood; only undominated vertices are still addable.
        const int v = undominated.find_first();
        Bits cand = closed_[static_cast<std::size_t>(v)] & undominated;
        std::vector<int> candidates;
        cand.for_each([&](int u) { candidates.push_back(u); });
        std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
            const int ca = closed_[static_cast<std::size_t>(a)].count_and(undominated);
            const int cb = closed_[static_cast<std::size_t>(b)].count_and(undominated);
            if (ca != cb) return ca > cb;  // cover more first
            return a < b;
        });
        for (int u : candidates) {
            if (!completed_) return;
            stack.push_back(u);
            Bits next_dominated = dominated;
            next_dominated |= closed_[static_cast<std::size_t>(u)];
            branch(next_dominated, stack);
            stack.pop_back();
        }
    }

    const Subspace& domain_;
    std::size_t node_cap_;
    ConflictGraph graph_;
    int n_ = 0;
    std::vector<Bits> closed_;
    std::vector<Bits> ball2_;
    int best_size_ = 0;
    std::vector<PointId> best_ids_;
    std::size_t nodes_ = 0;
    bool completed_ = true;
};

}  // namespace

MinLatticeSize min_lattice_size(const Subspace& domain, double eps, std::size_t node_cap,
                                const SearchConfig& cfg) {
    return MinSizeSearch(domain, eps, node_cap, cfg).run();
}

}  // namespace latmean
