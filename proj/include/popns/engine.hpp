#pragma once

#include "popns/directory.hpp"
#include "popns/ids.hpp"
#include "popns/namespace_store.hpp"
#include "popns/peers.hpp"
#include "popns/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace popns {

struct SimConfig {
    std::size_t peers = 100;
    double s = 1.0;
    double p_update = 0.5;
    double p_add = 0.75;
    double p_file = 0.5;
    double p_leave = 0.0;
    Step steps = 100000;
    std::uint64_t seed = 1;
    std::size_t realizations = 10;
    Step snapshot_interval = 1000;
    // Follow Traverse line by line: the root never enters the path and a
    // node's degree is counted before any deviation from it.
    bool literal_pseudocode = false;

    void validate() const;
    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Index in [0, k) of the path entry to update, for mean path degree
/// `mean_degree`, path length `k` and uniform draw `p` in [0, 1):
///
///   floor(log_d(1 + (d^k - 1) p)),   d = mean_degree
///
/// which tends to floor(p k) as d -> 1. Evaluated in log space so large k
/// cannot overflow. Any d > 0 is accepted; d = 0 only with k = 1.
std::size_t choose_update_index(double mean_degree, std::size_t k, double p);

struct TraversalRecord {
    PeerId peer;
    bool reset = false;
    std::vector<VersionRef> path; // directory versions occupied along the walk
    std::uint64_t degree_sum = 0;
    double mean_degree = 0.0;
    std::uint64_t deviations = 0; // select calls made during the walk
    std::optional<std::size_t> chosen_index;
    std::optional<NodeId> updated;
};

enum class UpdateAction : std::uint8_t { added_directory, added_file, deleted_link };

struct UpdateOutcome {
    VersionRef new_version;
    UpdateAction action = UpdateAction::added_directory;
    std::optional<NodeId> new_node;
    std::optional<NodeId> removed_child;
};

/// Builds the initial directory tree into an empty store.
using TreeBuilder = std::function<void(DirectoryStore&)>;

// One realization: directory store, namespace and peer population evolving
// under repeated traversals. Non-movable because the population refers to
// the store and namespace it lives beside.
class Simulation {
public:
    /// Starts from `build` (default: the four-node control tree) with
    /// peer 0 viewing version 1 of every initial node.
    Simulation(const SimConfig& config, std::uint64_t seed, const TreeBuilder& build = {});
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    /// Pick a peer uniformly, possibly churn it, then traverse.
    TraversalRecord step();
    TraversalRecord traverse(PeerId peer);
    UpdateOutcome update(VersionRef target, PeerId peer);

    Step time() const { return t_; }
    std::uint64_t updates() const { return updates_; }
    std::uint64_t resets() const { return resets_; }

    const SimConfig& config() const { return config_; }
    const DirectoryStore& store() const { return store_; }
    const NamespaceStore& names() const { return names_; }
    const Population& peers() const { return peers_; }
    Population& peers() { return peers_; }
    Rng& rng() { return rng_; }

private:
    bool deviates(const NodeVersion& v) { return rng_.uniform() >= v.quality; }

    SimConfig config_;
    Rng rng_;
    DirectoryStore store_;
    NamespaceStore names_;
    Population peers_;
    Step t_ = 0;
    std::uint64_t updates_ = 0;
    std::uint64_t resets_ = 0;
};

} // namespace popns
