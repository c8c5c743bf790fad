#pragma once

#include "latmean/measure.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace latmean {

// Document loaders. All throw ParseError on malformed or semantically
// invalid input.

MetricSpace load_space(const nlohmann::json& doc);
MetricSpace load_space_file(const std::string& path);

FnSpec load_function(const nlohmann::json& doc);
FnSpec load_function_file(const std::string& path);

/// Region document: {"ids": [...]}, {"box": {"min": [...], "max": [...]}} or
/// {"ball": {"center": [...], "radius": r}}. Boxes are closed; balls use
/// euclidean distance on coordinates. Resolved to sorted ids at load time.
std::vector<PointId> load_region(const nlohmann::json& doc, const MetricSpace& space);
std::vector<PointId> load_region_file(const std::string& path, const MetricSpace& space);

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double v);

// Table writers. CSV is the default surface; JSON mirrors it field-for-field.

void write_sweep_csv(std::ostream& out, const SweepResult& result);
nlohmann::ordered_json sweep_to_json(const SweepResult& result);

void write_lattices_csv(std::ostream& out, const std::vector<Lattice>& lattices);
nlohmann::ordered_json lattices_to_json(const std::vector<Lattice>& lattices);

void write_ratio_trail_csv(std::ostream& out, const std::vector<BoundaryRatioBounds>& trail);
nlohmann::ordered_json ratio_trail_to_json(const std::vector<BoundaryRatioBounds>& trail);

void write_validation_csv(std::ostream& out, const ValidationReport& report);

}  // namespace latmean
