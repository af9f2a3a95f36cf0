#include "popns/namespace_store.hpp"

#include <algorithm>
#include <numeric>

namespace popns {

void NamespaceStore::put(PeerId peer, const Key& key, ValueRecord value)
{
    auto& entry = entries_[key];
    auto [it, inserted] = entry.try_emplace(peer, std::move(value));
    if (inserted) {
        ++total_;
        keys_by_peer_[peer].insert(key);
    } else {
        it->second = std::move(value);
    }
}

std::vector<ValueRecord> NamespaceStore::get(const Key& key) const
{
    std::vector<ValueRecord> out;
    if (auto it = entries_.find(key); it != entries_.end()) {
        out.reserve(it->second.size());
        for (const auto& [peer, value] : it->second)
            out.push_back(value);
    }
    return out;
}

std::vector<ValueRecord> NamespaceStore::get(const Key& key, std::optional<std::size_t> limit,
                                             Rng& rng) const
{
    auto all = get(key);
    if (!limit || *limit >= all.size())
        return all;

    // Partial Fisher-Yates over indices, then restore storage order.
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < *limit; ++i) {
        auto j = i + rng.below(idx.size() - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(*limit);
    std::sort(idx.begin(), idx.end());

    std::vector<ValueRecord> out;
    out.reserve(idx.size());
    for (auto i : idx)
        out.push_back(std::move(all[i]));
    return out;
}

void NamespaceStore::remove_peer(PeerId peer)
{
    auto it = keys_by_peer_.find(peer);
    if (it == keys_by_peer_.end())
        return;
    for (const auto& key : it->second) {
        auto e = entries_.find(key);
        if (e == entries_.end())
            continue;
        total_ -= e->second.erase(peer);
        if (e->second.empty())
            entries_.erase(e);
    }
    keys_by_peer_.erase(it);
}

std::vector<ResolvedVersion> NamespaceStore::tally(const std::vector<ValueRecord>& values)
{
    std::map<Key, ResolvedVersion> by_content;
    for (const auto& v : values) {
        auto& slot = by_content[v.content_ref];
        if (slot.viewers == 0)
            slot.record = v;
        ++slot.viewers;
    }
    std::vector<ResolvedVersion> out;
    out.reserve(by_content.size());
    for (auto& [k, r] : by_content)
        out.push_back(std::move(r));
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.viewers > b.viewers; });
    return out;
}

std::vector<ResolvedVersion> NamespaceStore::resolve(std::string_view node_name,
                                                     std::optional<std::size_t> limit,
                                                     Rng& rng) const
{
    return tally(get(Key::of(node_name), limit, rng));
}

std::vector<ResolvedVersion> NamespaceStore::resolve(std::string_view node_name) const
{
    return tally(get(Key::of(node_name)));
}

std::size_t NamespaceStore::value_count(const Key& key) const
{
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.size();
}

const ValueRecord* NamespaceStore::find(PeerId peer, const Key& key) const
{
    auto it = entries_.find(key);
    if (it == entries_.end())
        return nullptr;
    auto v = it->second.find(peer);
    return v == it->second.end() ? nullptr : &v->second;
}

} // namespace popns
