#pragma once

#include "popns/engine.hpp"
#include "popns/run.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace popns {

struct Sweep {
    std::string parameter; // canonical SimConfig field name
    std::vector<double> values;

    friend bool operator==(const Sweep&, const Sweep&) = default;
};

struct ExperimentSpec {
    SimConfig base;
    std::optional<Sweep> sweep;
    std::filesystem::path output_dir = "results";
    bool emit_dot = false;
    int threads = 0;

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// Canonical field name for a sweep parameter or alias ("N", "t_max", ...).
/// Throws UsageError for anything that is not a SimConfig field.
std::string canonical_parameter(std::string_view name);

/// `config` with one field set; validates the value against the field's domain.
SimConfig with_parameter(SimConfig config, std::string_view name, double value);

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);

/// Command-line flags (argv[0] excluded) layered over an optional --config
/// JSON file, layered over the default control parameters.
ExperimentSpec parse_config(const std::vector<std::string>& args);

/// Help text for the command line accepted by parse_config.
std::string usage();

struct SweepPoint {
    std::optional<double> value;
    std::filesystem::path directory;
    RunResult result;
};

struct ResultBundle {
    ExperimentSpec spec;
    std::vector<SweepPoint> points;
};

/// Run metadata embedded in every output file.
nlohmann::json run_metadata(const SimConfig& config, const std::optional<Sweep>& sweep,
                            std::optional<double> value);

/// Runs every sweep point and writes series.csv, majority.csv,
/// histograms.json and, with emit_dot, main_tree_<t>.dot for each.
ResultBundle run_experiment(const ExperimentSpec& spec);

void write_outputs(const SweepPoint& point, const ExperimentSpec& spec);

} // namespace popns
