#pragma once

#include "latmean/metric_space.hpp"
#include "latmean/types.hpp"

#include <variant>
#include <vector>

namespace latmean {

/// Evaluatable real-valued function on a space's points. Linear combinations
/// nest arbitrarily; evaluation of a combo is left-to-right summation of
/// weighted terms so results are reproducible bit-for-bit.
struct FnSpec {
    struct Constant {
        double value;
    };
    struct Coordinate {
        int axis;
    };
    struct Polynomial {
        int axis;
        std::vector<double> coeffs;  // ascending powers
    };
    struct Table {
        std::vector<double> values;  // indexed by PointId
    };
    struct Indicator {
        std::vector<PointId> ids;  // sorted, unique
    };
    struct LinearCombo {
        std::vector<double> weights;
        std::vector<FnSpec> terms;  // parallel to weights
    };

    using Node = std::variant<Constant, Coordinate, Polynomial, Table, Indicator, LinearCombo>;
    Node node;

    static FnSpec constant(double c) { return {Constant{c}}; }
    static FnSpec coordinate(int axis) { return {Coordinate{axis}}; }
    static FnSpec polynomial(int axis, std::vector<double> coeffs);
    static FnSpec table(std::vector<double> values) { return {Table{std::move(values)}}; }
};

double eval(const FnSpec& f, const MetricSpace& space, PointId p);

/// Characteristic function of an id set: 1 on the set, 0 elsewhere.
FnSpec indicator(std::vector<PointId> ids);

/// alpha*f + beta*g, evaluated pointwise.
FnSpec combine(double alpha, FnSpec f, double beta, FnSpec g);

/// Binding-time totality check: throws std::invalid_argument if f is partial
/// over the domain (short table, axis out of range, foreign indicator id).
void validate_fn(const FnSpec& f, const Subspace& domain);

/// max over the domain of |f|.
double max_abs(const FnSpec& f, const Subspace& domain);

/// min / max of f over the domain.
std::pair<double, double> value_range(const FnSpec& f, const Subspace& domain);

}  // namespace latmean
