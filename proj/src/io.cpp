#include "latmean/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace latmean {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

double require_number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

std::vector<double> require_number_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(require_number(v, what));
    return out;
}

std::vector<PointId> require_id_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of ids");
    std::vector<PointId> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
        out.push_back(v.get<PointId>());
    }
    return out;
}

Metric metric_from_name(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "manhattan") return Metric::Manhattan;
    if (name == "chebyshev") return Metric::Chebyshev;
    throw ParseError("unknown metric name: " + name);
}

}  // namespace

MetricSpace load_space(const json& doc) {
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("metric"))
        throw ParseError("space document needs 'points' and 'metric'");
    const json& pts = doc["points"];
    if (!pts.is_array() || pts.empty()) throw ParseError("'points' must be a nonempty array");

    const std::size_t n = pts.size();
    std::vector<std::vector<double>> coords;
    std::vector<std::string> labels;
    std::vector<PointId> ids;
    bool any_coords = false, any_labels = false, any_ids = false;

    for (const auto& p : pts) {
        if (!p.is_object()) throw ParseError("each point must be an object");
        if (p.contains("coords")) any_coords = true;
        if (p.contains("label")) any_labels = true;
        if (p.contains("id")) any_ids = true;
    }
    std::vector<std::size_t> position(n);  // id -> original list slot
    for (std::size_t i = 0; i < n; ++i) position[i] = i;
    if (any_ids) {
        std::vector<bool> used(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = pts[i];
            if (!p.contains("id") || !p["id"].is_number_integer())
                throw ParseError("either every point carries an integer 'id' or none does");
            const auto id = p["id"].get<long long>();
            if (id < 0 || id >= static_cast<long long>(n) || used[static_cast<std::size_t>(id)])
                throw ParseError("point ids must be a permutation of 0..n-1");
            used[static_cast<std::size_t>(id)] = true;
            position[static_cast<std::size_t>(id)] = i;
        }
    }
    if (any_coords) {
        coords.reserve(n);
        for (std::size_t id = 0; id < n; ++id) {
            const auto& p = pts[position[id]];
            if (!p.contains("coords")) throw ParseError("every point needs 'coords' or none does");
            coords.push_back(require_number_list(p["coords"], "point coords"));
        }
    }
    if (any_labels) {
        labels.reserve(n);
        for (std::size_t id = 0; id < n; ++id) {
            const auto& p = pts[position[id]];
            labels.push_back(p.contains("label") ? p["label"].get<std::string>() : "");
        }
    }

    const json& metric = doc["metric"];
    try {
        if (metric.is_string()) {
            if (!any_coords) throw ParseError("named metrics need point coordinates");
            return MetricSpace::from_coords(std::move(coords),
                                            metric_from_name(metric.get<std::string>()),
                                            std::move(labels));
        }
        if (metric.is_object() && metric.contains("matrix")) {
            const json& rows = metric["matrix"];
            if (!rows.is_array()) throw ParseError("'matrix' must be an array of rows");
            std::vector<std::vector<double>> matrix;
            matrix.reserve(rows.size());
            for (const auto& row : rows)
                matrix.push_back(require_number_list(row, "matrix row"));
            if (matrix.size() != n) throw ParseError("matrix size must match the point count");
            if (any_coords)
                return MetricSpace::from_matrix_with_coords(matrix, std::move(coords),
                                                            std::move(labels));
            return MetricSpace::from_matrix(matrix, std::move(labels));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    throw ParseError("'metric' must be a metric name or {\"matrix\": [[...]]}");
}

MetricSpace load_space_file(const std::string& path) { return load_space(parse_file(path)); }

FnSpec load_function(const json& doc) {
    if (!doc.is_object() || !doc.contains("type"))
        throw ParseError("function document needs a 'type'");
    const std::string type = doc["type"].get<std::string>();
    if (type == "constant") return FnSpec::constant(require_number(doc.at("value"), "value"));
    if (type == "coordinate") {
        if (!doc.contains("axis") || !doc["axis"].is_number_integer())
            throw ParseError("coordinate function needs an integer 'axis'");
        return FnSpec::coordinate(doc["axis"].get<int>());
    }
    if (type == "polynomial") {
        if (!doc.contains("axis") || !doc["axis"].is_number_integer())
            throw ParseError("polynomial needs an integer 'axis'");
        auto coeffs = require_number_list(doc.at("coeffs"), "coeffs");
        if (coeffs.empty()) throw ParseError("polynomial needs at least one coefficient");
        return FnSpec::polynomial(doc["axis"].get<int>(), std::move(coeffs));
    }
    if (type == "table") return FnSpec::table(require_number_list(doc.at("values"), "values"));
    if (type == "indicator") return indicator(require_id_list(doc.at("ids"), "ids"));
    if (type == "linear_combo") {
        const json& terms = doc.at("terms");
        if (!terms.is_array() || terms.empty())
            throw ParseError("linear_combo needs a nonempty 'terms' array");
        FnSpec::LinearCombo combo;
        for (const auto& term : terms) {
            if (!term.is_object() || !term.contains("weight") || !term.contains("fn"))
                throw ParseError("each term needs 'weight' and 'fn'");
            combo.weights.push_back(require_number(term["weight"], "weight"));
            combo.terms.push_back(load_function(term["fn"]));
        }
        return {std::move(combo)};
    }
    throw ParseError("unknown function type: " + type);
}

FnSpec load_function_file(const std::string& path) { return load_function(parse_file(path)); }

std::vector<PointId> load_region(const json& doc, const MetricSpace& space) {
    if (!doc.is_object()) throw ParseError("region document must be an object");
    std::vector<PointId> ids;
    if (doc.contains("ids")) {
        ids = require_id_list(doc["ids"], "region ids");
        for (PointId p : ids)
            if (p < 0 || p >= space.size()) throw ParseError("region id out of range");
    } else if (doc.contains("box")) {
        if (!space.has_coords()) throw ParseError("box regions need a space with coordinates");
        const auto lo = require_number_list(doc["box"].at("min"), "box min");
        const auto hi = require_number_list(doc["box"].at("max"), "box max");
        if (static_cast<int>(lo.size()) != space.dim() || lo.size() != hi.size())
            throw ParseError("box bounds must match the space dimension");
        for (PointId p = 0; p < space.size(); ++p) {
            bool inside = true;
            for (int k = 0; k < space.dim() && inside; ++k) {
                const double x = space.coord(p, k);
                inside = lo[static_cast<std::size_t>(k)] <= x &&
                         x <= hi[static_cast<std::size_t>(k)];
            }
            if (inside) ids.push_back(p);
        }
    } else if (doc.contains("ball")) {
        if (!space.has_coords()) throw ParseError("ball regions need a space with coordinates");
        const auto center = require_number_list(doc["ball"].at("center"), "ball center");
        const double radius = require_number(doc["ball"].at("radius"), "ball radius");
        if (static_cast<int>(center.size()) != space.dim())
            throw ParseError("ball center must match the space dimension");
        for (PointId p = 0; p < space.size(); ++p) {
            double s = 0.0;
            for (int k = 0; k < space.dim(); ++k) {
                const double d = space.coord(p, k) - center[static_cast<std::size_t>(k)];
                s += d * d;
            }
            if (std::sqrt(s) <= radius) ids.push_back(p);
        }
    } else {
        throw ParseError("region document needs 'ids', 'box' or 'ball'");
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<PointId> load_region_file(const std::string& path, const MetricSpace& space) {
    return load_region(parse_file(path), space);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string opt_count(const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string();
}
std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}
std::string opt_double(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "eps,lower,upper,gap,exact,lattice_count,min_lattice_size\n";
    for (const MeanBounds& b : result.trail) {
        out << format_double(b.eps) << ',' << format_double(b.lower) << ','
            << format_double(b.upper) << ',' << format_double(b.gap()) << ','
            << (b.exact ? 1 : 0) << ',' << opt_count(b.lattice_count) << ','
            << opt_int(b.min_lattice_size) << '\n';
    }
    out << "verdict," << to_string(result.verdict);
    if (result.mean_estimate) out << ",estimate," << format_double(*result.mean_estimate);
    out << '\n';
}

nlohmann::ordered_json sweep_to_json(const SweepResult& result) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const MeanBounds& b : result.trail) {
        nlohmann::ordered_json row;
        row["eps"] = b.eps;
        row["lower"] = b.lower;
        row["upper"] = b.upper;
        row["gap"] = b.gap();
        row["exact"] = b.exact;
        if (b.lattice_count) row["lattice_count"] = *b.lattice_count;
        if (b.min_lattice_size) row["min_lattice_size"] = *b.min_lattice_size;
        rows.push_back(std::move(row));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = std::move(rows);
    doc["verdict"] = to_string(result.verdict);
    if (result.mean_estimate) doc["estimate"] = *result.mean_estimate;
    doc["gap_floor"] = result.gap_floor;
    return doc;
}

void write_lattices_csv(std::ostream& out, const std::vector<Lattice>& lattices) {
    out << "size,members\n";
    for (const Lattice& l : lattices) {
        out << l.members.size() << ',';
        for (std::size_t i = 0; i < l.members.size(); ++i) {
            if (i) out << ' ';
            out << l.members[i];
        }
        out << '\n';
    }
    out << "count," << lattices.size() << '\n';
}

nlohmann::ordered_json lattices_to_json(const std::vector<Lattice>& lattices) {
    nlohmann::ordered_json sets = nlohmann::ordered_json::array();
    for (const Lattice& l : lattices) sets.push_back(l.members);
    nlohmann::ordered_json doc;
    doc["count"] = lattices.size();
    doc["lattices"] = std::move(sets);
    return doc;
}

void write_ratio_trail_csv(std::ostream& out, const std::vector<BoundaryRatioBounds>& trail) {
    out << "eps,ratio_low,ratio_high,skipped,exact\n";
    for (const BoundaryRatioBounds& t : trail) {
        out << format_double(t.eps) << ',' << opt_double(t.ratio_low) << ','
            << opt_double(t.ratio_high) << ',' << t.skipped << ',' << (t.exact ? 1 : 0) << '\n';
    }
}

nlohmann::ordered_json ratio_trail_to_json(const std::vector<BoundaryRatioBounds>& trail) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BoundaryRatioBounds& t : trail) {
        nlohmann::ordered_json row;
        row["eps"] = t.eps;
        if (t.ratio_low) row["ratio_low"] = *t.ratio_low;
        if (t.ratio_high) row["ratio_high"] = *t.ratio_high;
        row["skipped"] = t.skipped;
        row["exact"] = t.exact;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
    out << "severity,description\n";
    for (const MetricViolation& v : report.violations) out << "violation," << v.describe() << '\n';
    for (const MetricViolation& w : report.warnings) out << "warning," << w.describe() << '\n';
}

}  // namespace latmean
