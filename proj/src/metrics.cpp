#include "popns/metrics.hpp"

#include "popns/errors.hpp"

#include <algorithm>

namespace popns {

std::size_t quality_bucket(double quality)
{
    const auto b = static_cast<std::size_t>(quality * kQualityBuckets);
    return std::min(b, kQualityBuckets - 1);
}

MainTree extract_main_tree(const DirectoryStore& store, const Population& peers, Rng& rng)
{
    return main_tree(
        store, [&](NodeId n, VersionNo j) { return peers.viewers(n, j); }, rng);
}

Snapshot summarize(const MainTree& tree, const DirectoryStore& store, const Population& peers,
                   Step t, std::uint64_t created_versions)
{
    Snapshot s;
    s.t = t;
    s.main_tree_size = tree.size();
    s.main_tree_avg_quality = tree.average_quality();
    s.total_nodes = store.node_count();
    for (std::uint32_t i = 1; i <= store.node_count(); ++i)
        if (peers.node_viewers(NodeId{i}) > 0)
            ++s.total_nodes_viewed;
    s.total_versions = store.total_versions();
    s.created_versions = created_versions;
    return s;
}

Histogram degree_histogram(const DirectoryStore& store, const Population& peers, Rng& rng)
{
    Histogram h;
    auto viewers = [&](NodeId n, VersionNo j) { return peers.viewers(n, j); };
    for (std::uint32_t i = 1; i <= store.node_count(); ++i) {
        const NodeId node{i};
        if (peers.node_viewers(node) == 0)
            continue;
        const auto j = most_popular_version(store, node, viewers, rng);
        ++h[store.version(node, j).degree()];
    }
    return h;
}

Histogram viewers_histogram(const DirectoryStore& store, const Population& peers)
{
    Histogram h;
    for (std::uint32_t i = 1; i <= store.node_count(); ++i)
        for (auto j : peers.viewed_versions(NodeId{i}))
            ++h[peers.viewers(NodeId{i}, j)];
    return h;
}

QualityTable viewers_by_quality(const DirectoryStore& store, const Population& peers)
{
    QualityTable table{};
    for (std::uint32_t i = 1; i <= store.node_count(); ++i) {
        const NodeId node{i};
        for (auto j : peers.viewed_versions(node)) {
            auto& b = table[quality_bucket(store.version(node, j).quality)];
            ++b.versions;
            b.viewers += peers.viewers(node, j);
        }
    }
    return table;
}

std::vector<MajorityEvent> MajorityTracker::observe(const DirectoryStore& store,
                                                    const Population& peers,
                                                    std::span<const VersionRef> raised, Step t)
{
    std::vector<MajorityEvent> now;
    for (const auto& ref : raised) {
        if (2 * static_cast<std::uint64_t>(peers.viewers(ref)) <= population_)
            continue;
        if (!fired_.insert(ref).second)
            continue;
        const auto& v = store.version(ref);
        now.push_back({ref, v.quality, v.created_at, t});
    }
    std::sort(now.begin(), now.end(),
              [](const auto& a, const auto& b) { return a.version < b.version; });
    events_.insert(events_.end(), now.begin(), now.end());
    return now;
}

AggregateMetrics aggregate(std::span<const MetricsSeries> runs)
{
    AggregateMetrics out;
    if (runs.empty())
        return out;
    const auto n = static_cast<double>(runs.size());
    const auto len = runs.front().snapshots.size();
    for (const auto& r : runs)
        if (r.snapshots.size() != len)
            throw StateError("realizations sampled at different times");

    out.series.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        auto& m = out.series[k];
        m.t = runs.front().snapshots[k].t;
        for (const auto& r : runs) {
            const auto& s = r.snapshots[k];
            if (s.t != m.t)
                throw StateError("realizations sampled at different times");
            m.main_tree_size += static_cast<double>(s.main_tree_size);
            m.main_tree_avg_quality += s.main_tree_avg_quality;
            m.total_nodes += static_cast<double>(s.total_nodes);
            m.total_nodes_viewed += static_cast<double>(s.total_nodes_viewed);
            m.total_versions += static_cast<double>(s.total_versions);
            m.created_versions += static_cast<double>(s.created_versions);
        }
        m.main_tree_size /= n;
        m.main_tree_avg_quality /= n;
        m.total_nodes /= n;
        m.total_nodes_viewed /= n;
        m.total_versions /= n;
        m.created_versions /= n;
    }

    std::array<std::uint64_t, kQualityBuckets> elapsed_sum{};
    for (const auto& r : runs) {
        for (const auto& [k, f] : r.degree_histogram)
            out.degree_histogram[k] += static_cast<double>(f) / n;
        for (const auto& [k, f] : r.viewers_histogram)
            out.viewers_histogram[k] += static_cast<double>(f) / n;
        for (std::size_t b = 0; b < kQualityBuckets; ++b) {
            out.viewers_by_quality[b].versions += r.viewers_by_quality[b].versions;
            out.viewers_by_quality[b].viewers += r.viewers_by_quality[b].viewers;
        }
        for (const auto& e : r.majority_events) {
            const auto b = quality_bucket(e.quality);
            ++out.majority_by_quality[b].events;
            elapsed_sum[b] += e.elapsed();
        }
    }
    for (std::size_t b = 0; b < kQualityBuckets; ++b) {
        auto& m = out.majority_by_quality[b];
        m.mean_count = static_cast<double>(m.events) / n;
        m.mean_elapsed =
            m.events == 0 ? 0.0 : static_cast<double>(elapsed_sum[b]) / static_cast<double>(m.events);
    }
    return out;
}

} // namespace popns
