#pragma once

#include "popns/directory.hpp"
#include "popns/metrics.hpp"
#include "popns/run.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace popns {

/// Shortest decimal text that round-trips `x`.
std::string format_double(double x);

/// Fill colour for a node of the given quality: four greys by quartile,
/// darkest for quality >= 0.75.
const char* quality_fill(double quality);

/// Graphviz rendering: ellipses for directories, diamonds for files.
std::string export_dot(const MainTree& tree);

nlohmann::json to_json(const NodeVersion& v);
nlohmann::json to_json(const DirectoryStore& store);
nlohmann::json to_json(const MainTree& tree);
MainTree main_tree_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimConfig& config);

inline constexpr const char* kSeriesColumns =
    "realization,t,main_tree_size,main_tree_avg_quality,total_nodes,total_nodes_viewed,"
    "total_versions,created_versions";

// One row per snapshot per realization, followed by the pointwise mean with
// realization "mean". Preceded by a "# " comment line holding `metadata`.
void write_series_csv(std::ostream& os, const RunResult& run, const nlohmann::json& metadata);

inline constexpr const char* kMajorityColumns =
    "realization,node,version,quality,created_at,reached_at,elapsed";

void write_majority_csv(std::ostream& os, const RunResult& run, const nlohmann::json& metadata);

/// End-of-run histograms, per realization and averaged.
nlohmann::json histograms_json(const RunResult& run, const nlohmann::json& metadata);

} // namespace popns
