#pragma once

#include "popns/directory.hpp"
#include "popns/ids.hpp"
#include "popns/peers.hpp"
#include "popns/rng.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_set>
#include <vector>

namespace popns {

struct Snapshot {
    Step t = 0;
    std::size_t main_tree_size = 0;
    double main_tree_avg_quality = 0.0;
    std::size_t total_nodes = 0;
    std::size_t total_nodes_viewed = 0; // nodes with at least one viewer
    std::size_t total_versions = 0;
    std::uint64_t created_versions = 0; // versions created by updates

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct MeanSnapshot {
    Step t = 0;
    double main_tree_size = 0.0;
    double main_tree_avg_quality = 0.0;
    double total_nodes = 0.0;
    double total_nodes_viewed = 0.0;
    double total_versions = 0.0;
    double created_versions = 0.0;
};

struct MajorityEvent {
    VersionRef version;
    double quality = 0.0;
    Step created_at = 0;
    Step reached_at = 0;

    Step elapsed() const { return reached_at - created_at; }
};

using Histogram = std::map<std::uint64_t, std::uint64_t>;

inline constexpr std::size_t kQualityBuckets = 10;

/// Decile of a quality in [0,1).
std::size_t quality_bucket(double quality);

struct QualityBucket {
    std::uint64_t versions = 0;
    std::uint64_t viewers = 0;

    double mean_viewers() const
    {
        return versions == 0 ? 0.0 : static_cast<double>(viewers) / static_cast<double>(versions);
    }
};

using QualityTable = std::array<QualityBucket, kQualityBuckets>;

struct MetricsSeries {
    std::vector<Snapshot> snapshots;
    Histogram degree_histogram;
    Histogram viewers_histogram;
    QualityTable viewers_by_quality{};
    std::vector<MajorityEvent> majority_events;
    MainTree final_main_tree;
};

/// Main tree under the current viewer counts.
MainTree extract_main_tree(const DirectoryStore& store, const Population& peers, Rng& rng);

/// Summary of `tree` and global tallies at time t.
Snapshot summarize(const MainTree& tree, const DirectoryStore& store, const Population& peers,
                   Step t, std::uint64_t created_versions);

// Out-degree frequency over viewed nodes, one most-popular version per node
// (ties drawn from `rng`). Files count with degree 0.
Histogram degree_histogram(const DirectoryStore& store, const Population& peers, Rng& rng);

/// Viewer-count frequency over all versions with at least one viewer.
Histogram viewers_histogram(const DirectoryStore& store, const Population& peers);

/// Viewed versions per quality decile with their total viewers.
QualityTable viewers_by_quality(const DirectoryStore& store, const Population& peers);

// Emits an event the first time a version is viewed by strictly more than
// half of the population. Only versions whose count rose need checking.
class MajorityTracker {
public:
    explicit MajorityTracker(std::size_t population) : population_(population) {}

    /// Checks `raised` at time t; returns the events fired now.
    std::vector<MajorityEvent> observe(const DirectoryStore& store, const Population& peers,
                                       std::span<const VersionRef> raised, Step t);

    const std::vector<MajorityEvent>& events() const { return events_; }

private:
    std::size_t population_;
    std::unordered_set<VersionRef> fired_;
    std::vector<MajorityEvent> events_;
};

struct MajorityBucket {
    double mean_count = 0.0;   // events per realization
    double mean_elapsed = 0.0; // steps from creation to majority
    std::uint64_t events = 0;
};

struct AggregateMetrics {
    std::vector<MeanSnapshot> series;
    std::map<std::uint64_t, double> degree_histogram;  // mean frequency per realization
    std::map<std::uint64_t, double> viewers_histogram;
    QualityTable viewers_by_quality{}; // pooled over realizations
    std::array<MajorityBucket, kQualityBuckets> majority_by_quality{};
};

/// Pointwise mean of equally sampled realizations.
AggregateMetrics aggregate(std::span<const MetricsSeries> runs);

} // namespace popns
