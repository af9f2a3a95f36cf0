#include "popns/export.hpp"

#include "popns/errors.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

namespace popns {

std::string format_double(double x)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

const char* quality_fill(double quality)
{
    if (quality >= 0.75)
        return "gray30";
    if (quality >= 0.5)
        return "gray55";
    if (quality >= 0.25)
        return "gray75";
    return "gray92";
}

std::string export_dot(const MainTree& tree)
{
    std::ostringstream os;
    os << "digraph main_tree {\n";
    os << "  node [style=filled, fontsize=10];\n";
    for (const auto& e : tree.entries) {
        os << "  n" << e.ref.node.value << " [label=\"" << e.ref.node.value << "." << e.ref.version
           << "\", shape=" << (e.kind == NodeKind::directory ? "ellipse" : "diamond")
           << ", fillcolor=" << quality_fill(e.quality) << "];\n";
    }
    for (const auto& e : tree.entries) {
        if (e.parent < 0)
            continue;
        os << "  n" << tree.entries[static_cast<std::size_t>(e.parent)].ref.node.value << " -> n"
           << e.ref.node.value << ";\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const NodeVersion& v)
{
    nlohmann::json children = nlohmann::json::array();
    for (auto c : v.children)
        children.push_back(c.value);
    return {{"node", v.node.value},         {"version", v.version},
            {"quality", v.quality},          {"kind", to_string(v.kind)},
            {"children", std::move(children)}, {"created_at", v.created_at},
            {"content_ref", v.content_ref.hex()}};
}

nlohmann::json to_json(const DirectoryStore& store)
{
    nlohmann::json nodes = nlohmann::json::array();
    for (std::uint32_t i = 1; i <= store.node_count(); ++i) {
        const NodeId id{i};
        nlohmann::json versions = nlohmann::json::array();
        for (const auto& v : store.versions(id))
            versions.push_back(to_json(v));
        nodes.push_back({{"node", i},
                         {"kind", to_string(store.kind(id))},
                         {"parent", store.parent(id).value},
                         {"versions", std::move(versions)}});
    }
    return {{"node_count", store.node_count()},
            {"total_versions", store.total_versions()},
            {"nodes", std::move(nodes)}};
}

nlohmann::json to_json(const MainTree& tree)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : tree.entries)
        entries.push_back({{"node", e.ref.node.value},
                           {"version", e.ref.version},
                           {"quality", e.quality},
                           {"kind", to_string(e.kind)},
                           {"parent", e.parent}});
    return {{"size", tree.size()},
            {"average_quality", tree.average_quality()},
            {"entries", std::move(entries)}};
}

MainTree main_tree_from_json(const nlohmann::json& j)
{
    MainTree tree;
    for (const auto& e : j.at("entries")) {
        MainTreeEntry entry;
        entry.ref = {NodeId{e.at("node").get<std::uint32_t>()}, e.at("version").get<VersionNo>()};
        entry.quality = e.at("quality").get<double>();
        entry.kind = e.at("kind").get<std::string>() == "file" ? NodeKind::file
                                                               : NodeKind::directory;
        entry.parent = e.at("parent").get<std::int64_t>();
        tree.entries.push_back(entry);
    }
    return tree;
}

nlohmann::json to_json(const SimConfig& c)
{
    return {{"peers", c.peers},
            {"s", c.s},
            {"p_update", c.p_update},
            {"p_add", c.p_add},
            {"p_file", c.p_file},
            {"p_leave", c.p_leave},
            {"steps", c.steps},
            {"seed", c.seed},
            {"realizations", c.realizations},
            {"snapshot_interval", c.snapshot_interval},
            {"literal_pseudocode", c.literal_pseudocode}};
}

namespace {

void write_row(std::ostream& os, const std::string& realization, const Snapshot& s)
{
    os << realization << ',' << s.t << ',' << s.main_tree_size << ','
       << format_double(s.main_tree_avg_quality) << ',' << s.total_nodes << ','
       << s.total_nodes_viewed << ',' << s.total_versions << ',' << s.created_versions << '\n';
}

void write_row(std::ostream& os, const MeanSnapshot& s)
{
    os << "mean," << s.t << ',' << format_double(s.main_tree_size) << ','
       << format_double(s.main_tree_avg_quality) << ',' << format_double(s.total_nodes) << ','
       << format_double(s.total_nodes_viewed) << ',' << format_double(s.total_versions) << ','
       << format_double(s.created_versions) << '\n';
}

nlohmann::json histogram_json(const Histogram& h)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, f] : h)
        out[std::to_string(k)] = f;
    return out;
}

nlohmann::json histogram_json(const std::map<std::uint64_t, double>& h)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, f] : h)
        out[std::to_string(k)] = f;
    return out;
}

std::string bucket_label(std::size_t b)
{
    return "[" + format_double(static_cast<double>(b) / 10.0) + "," +
           format_double(static_cast<double>(b + 1) / 10.0) + ")";
}

nlohmann::json quality_json(const QualityTable& table)
{
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t b = 0; b < kQualityBuckets; ++b)
        out.push_back({{"bucket", bucket_label(b)},
                       {"versions", table[b].versions},
                       {"mean_viewers", table[b].mean_viewers()}});
    return out;
}

} // namespace

void write_series_csv(std::ostream& os, const RunResult& run, const nlohmann::json& metadata)
{
    os << "# " << metadata.dump() << '\n' << kSeriesColumns << '\n';
    for (std::size_t r = 0; r < run.realizations.size(); ++r)
        for (const auto& s : run.realizations[r].snapshots)
            write_row(os, std::to_string(r), s);
    for (const auto& s : run.mean.series)
        write_row(os, s);
}

void write_majority_csv(std::ostream& os, const RunResult& run, const nlohmann::json& metadata)
{
    os << "# " << metadata.dump() << '\n' << kMajorityColumns << '\n';
    for (std::size_t r = 0; r < run.realizations.size(); ++r)
        for (const auto& e : run.realizations[r].majority_events)
            os << r << ',' << e.version.node.value << ',' << e.version.version << ','
               << format_double(e.quality) << ',' << e.created_at << ',' << e.reached_at << ','
               << e.elapsed() << '\n';
}

nlohmann::json histograms_json(const RunResult& run, const nlohmann::json& metadata)
{
    nlohmann::json realizations = nlohmann::json::array();
    for (const auto& r : run.realizations)
        realizations.push_back({{"degree_histogram", histogram_json(r.degree_histogram)},
                                {"viewers_histogram", histogram_json(r.viewers_histogram)},
                                {"viewers_by_quality", quality_json(r.viewers_by_quality)},
                                {"majority_events", r.majority_events.size()}});

    nlohmann::json majority = nlohmann::json::array();
    for (std::size_t b = 0; b < kQualityBuckets; ++b) {
        const auto& m = run.mean.majority_by_quality[b];
        majority.push_back({{"bucket", bucket_label(b)},
                            {"mean_count", m.mean_count},
                            {"mean_elapsed", m.mean_elapsed},
                            {"events", m.events}});
    }

    return {{"metadata", metadata},
            {"conventions",
             {{"degree_histogram",
               "nodes with at least one viewer; one most-popular version per node, random "
               "tie-break; files have degree 0"},
              {"viewers_histogram", "versions with at least one viewer"},
              {"viewers_by_quality", "versions with at least one viewer, quality deciles"}}},
            {"mean",
             {{"degree_histogram", histogram_json(run.mean.degree_histogram)},
              {"viewers_histogram", histogram_json(run.mean.viewers_histogram)},
              {"viewers_by_quality", quality_json(run.mean.viewers_by_quality)},
              {"majority_by_quality", std::move(majority)}}},
            {"realizations", std::move(realizations)}};
}

} // namespace popns
