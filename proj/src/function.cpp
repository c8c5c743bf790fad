#include "latmean/function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latmean {

FnSpec FnSpec::polynomial(int axis, std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
    return {Polynomial{axis, std::move(coeffs)}};
}

FnSpec indicator(std::vector<PointId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return {FnSpec::Indicator{std::move(ids)}};
}

FnSpec combine(double alpha, FnSpec f, double beta, FnSpec g) {
    FnSpec::LinearCombo combo;
    combo.weights = {alpha, beta};
    combo.terms.push_back(std::move(f));
    combo.terms.push_back(std::move(g));
    return {std::move(combo)};
}

double eval(const FnSpec& f, const MetricSpace& space, PointId p) {
    if (p < 0 || p >= space.size()) throw std::out_of_range("point id out of range");
    struct Visitor {
        const MetricSpace& space;
        PointId p;

        double operator()(const FnSpec::Constant& c) const { return c.value; }
        double operator()(const FnSpec::Coordinate& c) const { return space.coord(p, c.axis); }
        double operator()(const FnSpec::Polynomial& poly) const {
            const double x = space.coord(p, poly.axis);
            double acc = 0.0;  // Horner
            for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it)
                acc = acc * x + *it;
            return acc;
        }
        double operator()(const FnSpec::Table& t) const {
            if (static_cast<std::size_t>(p) >= t.values.size())
                throw std::invalid_argument("missing table entry for point");
            return t.values[static_cast<std::size_t>(p)];
        }
        double operator()(const FnSpec::Indicator& ind) const {
            return std::binary_search(ind.ids.begin(), ind.ids.end(), p) ? 1.0 : 0.0;
        }
        double operator()(const FnSpec::LinearCombo& combo) const {
            double acc = 0.0;  // left-to-right, reproducible
            for (std::size_t i = 0; i < combo.terms.size(); ++i)
                acc += combo.weights[i] * eval(combo.terms[i], space, p);
            return acc;
        }
    };
    return std::visit(Visitor{space, p}, f.node);
}

void validate_fn(const FnSpec& f, const Subspace& domain) {
    struct Visitor {
        const Subspace& domain;

        void operator()(const FnSpec::Constant&) const {}
        void operator()(const FnSpec::Coordinate& c) const {
            if (c.axis < 0 || c.axis >= domain.parent().dim())
                throw std::invalid_argument("coordinate axis out of range for this space");
        }
        void operator()(const FnSpec::Polynomial& poly) const {
            if (poly.axis < 0 || poly.axis >= domain.parent().dim())
                throw std::invalid_argument("polynomial axis out of range for this space");
        }
        void operator()(const FnSpec::Table& t) const {
            for (PointId p : domain.ids())
                if (static_cast<std::size_t>(p) >= t.values.size())
                    throw std::invalid_argument("table does not cover every domain point");
        }
        void operator()(const FnSpec::Indicator& ind) const {
            if (!ind.ids.empty() &&
                (ind.ids.front() < 0 || ind.ids.back() >= domain.parent().size()))
                throw std::invalid_argument("indicator id out of range for this space");
        }
        void operator()(const FnSpec::LinearCombo& combo) const {
            if (combo.terms.empty())
                throw std::invalid_argument("linear combination must be non-empty");
            if (combo.terms.size() != combo.weights.size())
                throw std::invalid_argument("linear combination weights and terms mismatch");
            for (const auto& term : combo.terms) validate_fn(term, domain);
        }
    };
    std::visit(Visitor{domain}, f.node);
}

double max_abs(const FnSpec& f, const Subspace& domain) {
    double m = 0.0;
    for (PointId p : domain.ids()) m = std::max(m, std::abs(eval(f, domain.parent(), p)));
    return m;
}

std::pair<double, double> value_range(const FnSpec& f, const Subspace& domain) {
    double lo = eval(f, domain.parent(), domain.ids().front());
    double hi = lo;
    for (PointId p : domain.ids()) {
        const double v = eval(f, domain.parent(), p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

}  // namespace latmean
