#pragma once

#include "popns/directory.hpp"
#include "popns/ids.hpp"
#include "popns/namespace_store.hpp"
#include "popns/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace popns {

struct PeerState {
    std::unordered_map<NodeId, VersionNo> preferences; // version each node is viewed at
    std::uint64_t generation = 0;                      // bumped by every churn reset
};

// Viewing preferences of a fixed population of N peers together with the
// per-version viewer counts they induce. Every preference change is mirrored
// into the namespace as a registration under the node's name key.
//
// The population refers to a store and namespace it does not own; both must
// outlive it.
class Population {
public:
    Population(std::size_t peer_count, const DirectoryStore& store, NamespaceStore& names);
    Population(const Population&) = delete;
    Population& operator=(const Population&) = delete;

    std::size_t size() const { return peers_.size(); }

    std::optional<VersionNo> preference(PeerId peer, NodeId node) const;
    const PeerState& state(PeerId peer) const;

    /// Viewer count of a version.
    std::uint32_t viewers(NodeId node, VersionNo version) const;
    std::uint32_t viewers(VersionRef ref) const { return viewers(ref.node, ref.version); }
    /// Peers holding any preference for `node`.
    std::uint32_t node_viewers(NodeId node) const;
    std::uint32_t lambda_max(NodeId node) const;
    /// Versions of `node` with at least one viewer, in no particular order.
    std::span<const VersionNo> viewed_versions(NodeId node) const;

    /// Version `peer` views at `node`; on first visit a uniform pick among the
    /// most popular versions becomes its preference.
    const NodeVersion& viewing(NodeId node, PeerId peer, Rng& rng);

    /// Draw a version of `node` proportionally to viewer counts (uniform when
    /// nobody views it) and make it the peer's preference.
    const NodeVersion& select(NodeId node, PeerId peer, Rng& rng);

    void set_preference(PeerId peer, NodeId node, VersionNo version);

    /// Replace `peer` by a fresh peer in the same slot.
    void churn_reset(PeerId peer);

    /// Versions whose count was incremented since the last clear_raised().
    std::span<const VersionRef> raised() const { return raised_; }
    void clear_raised() { raised_.clear(); }

private:
    struct NodePopularity {
        std::vector<std::uint32_t> counts; // index version - 1
        std::vector<VersionNo> active;     // versions with count > 0
        std::uint32_t total = 0;
    };

    PeerState& mutable_state(PeerId peer);
    NodePopularity& popularity(NodeId node);
    const NodePopularity* find_popularity(NodeId node) const;
    void increment(NodeId node, VersionNo version);
    void decrement(NodeId node, VersionNo version);

    const DirectoryStore& store_;
    NamespaceStore& names_;
    std::vector<PeerState> peers_;
    std::vector<NodePopularity> popularity_; // index node - 1
    std::vector<VersionRef> raised_;
    std::vector<VersionNo> scratch_;
};

} // namespace popns
