#include "popns/peers.hpp"

#include "popns/errors.hpp"

#include <algorithm>
#include <string>

namespace popns {

Population::Population(std::size_t peer_count, const DirectoryStore& store, NamespaceStore& names)
    : store_(store), names_(names), peers_(peer_count)
{
    if (peer_count == 0)
        throw ParameterError("population needs at least one peer");
}

const PeerState& Population::state(PeerId peer) const
{
    if (peer.value >= peers_.size())
        throw StateError("unknown peer " + std::to_string(peer.value));
    return peers_[peer.value];
}

PeerState& Population::mutable_state(PeerId peer)
{
    if (peer.value >= peers_.size())
        throw StateError("unknown peer " + std::to_string(peer.value));
    return peers_[peer.value];
}

std::optional<VersionNo> Population::preference(PeerId peer, NodeId node) const
{
    const auto& prefs = state(peer).preferences;
    if (auto it = prefs.find(node); it != prefs.end())
        return it->second;
    return std::nullopt;
}

Population::NodePopularity& Population::popularity(NodeId node)
{
    if (popularity_.size() < node.value)
        popularity_.resize(store_.node_count());
    auto& pop = popularity_[node.value - 1];
    const auto n = store_.version_count(node);
    if (pop.counts.size() < n)
        pop.counts.resize(n, 0);
    return pop;
}

const Population::NodePopularity* Population::find_popularity(NodeId node) const
{
    if (node.value == 0 || node.value > popularity_.size())
        return nullptr;
    return &popularity_[node.value - 1];
}

std::uint32_t Population::viewers(NodeId node, VersionNo version) const
{
    const auto* pop = find_popularity(node);
    if (!pop || version == 0 || version > pop->counts.size())
        return 0;
    return pop->counts[version - 1];
}

std::uint32_t Population::node_viewers(NodeId node) const
{
    const auto* pop = find_popularity(node);
    return pop ? pop->total : 0;
}

std::uint32_t Population::lambda_max(NodeId node) const
{
    store_.require(node);
    const auto* pop = find_popularity(node);
    if (!pop)
        return 0;
    std::uint32_t best = 0;
    for (auto j : pop->active)
        best = std::max(best, pop->counts[j - 1]);
    return best;
}

std::span<const VersionNo> Population::viewed_versions(NodeId node) const
{
    const auto* pop = find_popularity(node);
    if (!pop)
        return {};
    return pop->active;
}

void Population::increment(NodeId node, VersionNo version)
{
    auto& pop = popularity(node);
    if (pop.counts[version - 1]++ == 0)
        pop.active.push_back(version);
    ++pop.total;
    raised_.push_back({node, version});
}

void Population::decrement(NodeId node, VersionNo version)
{
    auto& pop = popularity(node);
    if (--pop.counts[version - 1] == 0) {
        auto it = std::find(pop.active.begin(), pop.active.end(), version);
        *it = pop.active.back();
        pop.active.pop_back();
    }
    --pop.total;
}

void Population::set_preference(PeerId peer, NodeId node, VersionNo version)
{
    auto& st = mutable_state(peer);
    const auto& v = store_.version(node, version);
    auto [it, inserted] = st.preferences.try_emplace(node, version);
    if (!inserted) {
        if (it->second == version)
            return;
        decrement(node, it->second);
        it->second = version;
    }
    increment(node, version);
    names_.put(peer, store_.name_key(node),
               {std::to_string(node.value) + "." + std::to_string(version), v.content_ref});
}

const NodeVersion& Population::viewing(NodeId node, PeerId peer, Rng& rng)
{
    store_.require(node);
    if (auto pref = preference(peer, node))
        return store_.version(node, *pref);

    auto& pop = popularity(node);
    VersionNo chosen;
    if (pop.total == 0) {
        chosen = static_cast<VersionNo>(1 + rng.below(pop.counts.size()));
    } else {
        std::uint32_t best = 0;
        scratch_.clear();
        for (auto j : pop.active) {
            const auto c = pop.counts[j - 1];
            if (c > best) {
                best = c;
                scratch_.clear();
            }
            if (c == best)
                scratch_.push_back(j);
        }
        chosen = scratch_[rng.below(scratch_.size())];
    }
    set_preference(peer, node, chosen);
    return store_.version(node, chosen);
}

const NodeVersion& Population::select(NodeId node, PeerId peer, Rng& rng)
{
    store_.require(node);
    auto& pop = popularity(node);
    VersionNo chosen = 0;
    if (pop.total == 0) {
        chosen = static_cast<VersionNo>(1 + rng.below(pop.counts.size()));
    } else {
        auto r = rng.below(pop.total);
        for (auto j : pop.active) {
            const auto c = pop.counts[j - 1];
            if (r < c) {
                chosen = j;
                break;
            }
            r -= c;
        }
    }
    set_preference(peer, node, chosen);
    return store_.version(node, chosen);
}

void Population::churn_reset(PeerId peer)
{
    auto& st = mutable_state(peer);
    for (const auto& [node, version] : st.preferences)
        decrement(node, version);
    st.preferences.clear();
    ++st.generation;
    names_.remove_peer(peer);
}

} // namespace popns
