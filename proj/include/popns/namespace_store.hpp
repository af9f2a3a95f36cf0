#pragma once

#include "popns/ids.hpp"
#include "popns/key.hpp"
#include "popns/rng.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace popns {

/// Value a peer stores under a node-name key: a version registration.
struct ValueRecord {
    std::string description;
    Key content_ref;

    friend bool operator==(const ValueRecord&, const ValueRecord&) = default;
};

/// A version registered under a name, with the number of peers backing it.
struct ResolvedVersion {
    ValueRecord record;
    std::size_t viewers = 0;
};

// In-memory multi-writer DHT. Each peer holds at most one value per key;
// a second put from the same peer replaces the first, puts from different
// peers coexist.
class NamespaceStore {
public:
    void put(PeerId peer, const Key& key, ValueRecord value);

    /// All values under `key`, ordered by storing peer.
    std::vector<ValueRecord> get(const Key& key) const;

    /// At most `limit` values sampled uniformly without replacement.
    /// Models a version list truncated by a download time limit.
    std::vector<ValueRecord> get(const Key& key, std::optional<std::size_t> limit, Rng& rng) const;

    void remove_peer(PeerId peer);

    /// Versions registered under `node_name`, most viewed first.
    /// Ties are ordered by content key.
    std::vector<ResolvedVersion> resolve(std::string_view node_name,
                                         std::optional<std::size_t> limit, Rng& rng) const;
    std::vector<ResolvedVersion> resolve(std::string_view node_name) const;

    std::size_t value_count(const Key& key) const;
    const ValueRecord* find(PeerId peer, const Key& key) const;
    std::size_t total_values() const { return total_; }
    std::size_t key_count() const { return entries_.size(); }

private:
    static std::vector<ResolvedVersion> tally(const std::vector<ValueRecord>& values);

    std::unordered_map<Key, std::map<PeerId, ValueRecord>> entries_;
    std::unordered_map<PeerId, std::unordered_set<Key>> keys_by_peer_;
    std::size_t total_ = 0;
};

} // namespace popns
