#include "popns/experiment.hpp"

#include "popns/errors.hpp"
#include "popns/export.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#ifndef POPNS_VERSION
#define POPNS_VERSION "unknown"
#endif

namespace popns {

namespace {

struct Alias {
    std::string_view name;
    std::string_view canonical;
};

constexpr Alias kAliases[] = {
    {"peers", "peers"},
    {"N", "peers"},
    {"s", "s"},
    {"p_update", "p_update"},
    {"p_add", "p_add"},
    {"p_file", "p_file"},
    {"p_leave", "p_leave"},
    {"steps", "steps"},
    {"t_max", "steps"},
    {"seed", "seed"},
    {"realizations", "realizations"},
    {"snapshot_interval", "snapshot_interval"},
};

std::uint64_t as_count(std::string_view name, double value, double min)
{
    if (!std::isfinite(value) || value != std::floor(value) || value < min ||
        value > static_cast<double>(std::numeric_limits<std::int64_t>::max()))
        throw UsageError(std::string(name) + " must be an integer >= " + format_double(min) +
                         ", got " + format_double(value));
    return static_cast<std::uint64_t>(value);
}

double as_probability(std::string_view name, double value)
{
    if (!(value >= 0.0 && value <= 1.0))
        throw UsageError(std::string(name) + " must lie in [0,1], got " + format_double(value));
    return value;
}

std::vector<double> split_values(const std::string& list)
{
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw UsageError("empty value in sweep list '" + list + "'");
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad number '" + item + "' in sweep list");
        }
        if (used != item.size())
            throw UsageError("bad number '" + item + "' in sweep list");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("sweep needs at least one value");
    return out;
}

std::string point_directory(const Sweep& sweep, double value)
{
    return sweep.parameter + "=" + format_double(value);
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open " + path.string() + " for writing");
    os << text;
    if (!os.flush())
        throw IoError("failed writing " + path.string());
}

} // namespace

std::string canonical_parameter(std::string_view name)
{
    for (const auto& a : kAliases)
        if (a.name == name)
            return std::string(a.canonical);
    throw UsageError("unknown sweep parameter '" + std::string(name) + "'");
}

SimConfig with_parameter(SimConfig c, std::string_view name, double value)
{
    const auto field = canonical_parameter(name);
    if (field == "peers")
        c.peers = as_count(field, value, 1);
    else if (field == "s") {
        if (!(value > 0.0) || !std::isfinite(value))
            throw UsageError("s must be positive, got " + format_double(value));
        c.s = value;
    } else if (field == "p_update")
        c.p_update = as_probability(field, value);
    else if (field == "p_add")
        c.p_add = as_probability(field, value);
    else if (field == "p_file")
        c.p_file = as_probability(field, value);
    else if (field == "p_leave")
        c.p_leave = as_probability(field, value);
    else if (field == "steps")
        c.steps = as_count(field, value, 0);
    else if (field == "seed")
        c.seed = as_count(field, value, 0);
    else if (field == "realizations")
        c.realizations = as_count(field, value, 1);
    else if (field == "snapshot_interval")
        c.snapshot_interval = as_count(field, value, 1);
    return c;
}

nlohmann::json to_json(const ExperimentSpec& spec)
{
    nlohmann::json j = to_json(spec.base);
    j["output_dir"] = spec.output_dir.string();
    j["emit_dot"] = spec.emit_dot;
    j["threads"] = spec.threads;
    if (spec.sweep)
        j["sweep"] = {{"parameter", spec.sweep->parameter}, {"values", spec.sweep->values}};
    return j;
}

ExperimentSpec spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw UsageError("configuration must be a JSON object");
    ExperimentSpec spec;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "output_dir")
                spec.output_dir = value.get<std::string>();
            else if (key == "emit_dot")
                spec.emit_dot = value.get<bool>();
            else if (key == "threads")
                spec.threads = value.get<int>();
            else if (key == "seed")
                spec.base.seed = value.get<std::uint64_t>();
            else if (key == "literal_pseudocode")
                spec.base.literal_pseudocode = value.get<bool>();
            else if (key == "sweep") {
                Sweep s{canonical_parameter(value.at("parameter").get<std::string>()),
                        value.at("values").get<std::vector<double>>()};
                if (s.values.empty())
                    throw UsageError("sweep needs at least one value");
                spec.sweep = std::move(s);
            } else
                spec.base = with_parameter(spec.base, key, value.get<double>());
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("bad value for '" + key + "' in configuration: " + e.what());
        }
    }
    if (spec.sweep)
        for (auto v : spec.sweep->values)
            with_parameter(spec.base, spec.sweep->parameter, v);
    return spec;
}

namespace {

struct Flags {
    std::string config_file;
    double peers = 0, s = 0, p_update = 0, p_add = 0, p_file = 0, p_leave = 0;
    double steps = 0, realizations = 0, snapshot_interval = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> sweep;
    std::string out;
    bool dot = false;
    bool literal = false;
    int threads = 0;
};

void add_options(CLI::App& app, Flags& f)
{
    app.add_option("--config", f.config_file, "JSON configuration file; flags override it");
    app.add_option("--peers", f.peers, "number of peers N (default 100)");
    app.add_option("--s", f.s, "quality parameter s (default 1.0)");
    app.add_option("--p-update", f.p_update, "update probability per traversal (default 0.5)");
    app.add_option("--p-add", f.p_add, "probability an update adds a link (default 0.75)");
    app.add_option("--p-file", f.p_file, "probability an added link is a file (default 0.5)");
    app.add_option("--p-leave", f.p_leave, "churn probability per chosen peer (default 0)");
    app.add_option("--steps", f.steps, "time steps per realization (default 100000)");
    app.add_option("--seed", f.seed, "base RNG seed (default 1)");
    app.add_option("--realizations", f.realizations, "realizations per point (default 10)");
    app.add_option("--snapshot-interval", f.snapshot_interval,
                   "steps between snapshots (default 1000)");
    app.add_option("--sweep", f.sweep, "sweep one parameter: <name> <v1,v2,...>")->expected(2);
    app.add_option("--out", f.out, "output directory (default results)");
    app.add_flag("--dot", f.dot, "write the final main tree of realization 0 as DOT");
    app.add_flag("--literal-pseudocode", f.literal,
                 "literal traversal: root outside the path, degree before deviation");
    app.add_option("--threads", f.threads, "OpenMP threads for realizations (0 = default)");
}

} // namespace

std::string usage()
{
    CLI::App app{"Popularity-based namespace simulator", "popns-sim"};
    Flags f;
    add_options(app, f);
    return app.help();
}

ExperimentSpec parse_config(const std::vector<std::string>& args)
{
    CLI::App app{"Popularity-based namespace simulator", "popns-sim"};
    app.set_help_flag();
    Flags f;
    add_options(app, f);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ExperimentSpec spec;
    if (!f.config_file.empty()) {
        std::ifstream is(f.config_file);
        if (!is)
            throw UsageError("cannot read configuration file " + f.config_file);
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("malformed configuration file " + f.config_file + ": " + e.what());
        }
        spec = spec_from_json(j);
    }

    auto given = [&](const char* flag) { return app.get_option(flag)->count() > 0; };
    const std::pair<const char*, double*> numeric[] = {
        {"--peers", &f.peers},
        {"--s", &f.s},
        {"--p-update", &f.p_update},
        {"--p-add", &f.p_add},
        {"--p-file", &f.p_file},
        {"--p-leave", &f.p_leave},
        {"--steps", &f.steps},
        {"--realizations", &f.realizations},
        {"--snapshot-interval", &f.snapshot_interval},
    };
    for (const auto& [flag, value] : numeric) {
        if (!given(flag))
            continue;
        // "--p-update" -> "p_update"
        std::string name(flag + 2);
        for (auto& ch : name)
            if (ch == '-')
                ch = '_';
        spec.base = with_parameter(spec.base, name, *value);
    }
    if (given("--seed"))
        spec.base.seed = f.seed;
    if (given("--sweep")) {
        Sweep s{canonical_parameter(f.sweep.at(0)), split_values(f.sweep.at(1))};
        for (auto v : s.values)
            with_parameter(spec.base, s.parameter, v);
        spec.sweep = std::move(s);
    }
    if (given("--out"))
        spec.output_dir = f.out;
    if (f.dot)
        spec.emit_dot = true;
    if (f.literal)
        spec.base.literal_pseudocode = true;
    if (given("--threads")) {
        if (f.threads < 0)
            throw UsageError("--threads must be non-negative");
        spec.threads = f.threads;
    }
    try {
        spec.base.validate();
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
    return spec;
}

nlohmann::json run_metadata(const SimConfig& config, const std::optional<Sweep>& sweep,
                            std::optional<double> value)
{
    nlohmann::json j = {{"program", "popns-sim"},
                        {"version", POPNS_VERSION},
                        {"config", to_json(config)},
                        {"seed_derivation",
                         "realization r stream k: splitmix64(splitmix64(splitmix64(seed) ^ r) ^ k)"
                         "; k=0 dynamics, k=1 metrics"}};
    if (sweep && value)
        j["sweep"] = {{"parameter", sweep->parameter}, {"value", *value}};
    return j;
}

void write_outputs(const SweepPoint& point, const ExperimentSpec& spec)
{
    std::error_code ec;
    std::filesystem::create_directories(point.directory, ec);
    if (ec)
        throw IoError("cannot create " + point.directory.string() + ": " + ec.message());

    const auto meta = run_metadata(point.result.config, spec.sweep, point.value);
    std::ostringstream series, majority;
    write_series_csv(series, point.result, meta);
    write_majority_csv(majority, point.result, meta);
    write_file(point.directory / "series.csv", series.str());
    write_file(point.directory / "majority.csv", majority.str());
    write_file(point.directory / "histograms.json",
               histograms_json(point.result, meta).dump(2) + "\n");
    if (spec.emit_dot && !point.result.realizations.empty()) {
        const auto t = point.result.config.steps;
        write_file(point.directory / ("main_tree_" + std::to_string(t) + ".dot"),
                   "// " + meta.dump() + "\n" +
                       export_dot(point.result.realizations.front().final_main_tree));
    }
}

ResultBundle run_experiment(const ExperimentSpec& spec)
{
    ResultBundle bundle{spec, {}};
    std::vector<std::pair<std::optional<double>, SimConfig>> configs;
    if (spec.sweep) {
        for (auto v : spec.sweep->values)
            configs.emplace_back(v, with_parameter(spec.base, spec.sweep->parameter, v));
    } else {
        configs.emplace_back(std::nullopt, spec.base);
    }

    for (const auto& [value, config] : configs) {
        SweepPoint point;
        point.value = value;
        point.directory =
            value ? spec.output_dir / point_directory(*spec.sweep, *value) : spec.output_dir;
        point.result = run_parallel(config, spec.threads);
        write_outputs(point, spec);
        bundle.points.push_back(std::move(point));
    }
    return bundle;
}

} // namespace popns
