#include "audit.hpp"

#include <set>

namespace popns::testing {

namespace {

std::string ref_text(VersionRef r)
{
    return "v(" + std::to_string(r.node.value) + "," + std::to_string(r.version) + ")";
}

} // namespace

std::vector<std::string> audit_popularity(const DirectoryStore& store, const Population& peers)
{
    std::vector<std::string> out;
    std::map<VersionRef, std::uint32_t> counts;
    std::map<std::uint32_t, std::uint32_t> per_node;
    for (std::uint32_t u = 0; u < peers.size(); ++u)
        for (const auto& [node, version] : peers.state(PeerId{u}).preferences) {
            ++counts[{node, version}];
            ++per_node[node.value];
        }

    for (std::uint32_t i = 1; i <= store.node_count(); ++i) {
        const NodeId node{i};
        std::uint32_t sum = 0;
        for (VersionNo j = 1; j <= store.version_count(node); ++j) {
            const auto it = counts.find({node, j});
            const std::uint32_t expect = it == counts.end() ? 0 : it->second;
            const auto got = peers.viewers(node, j);
            if (got != expect)
                out.push_back("lambda" + ref_text({node, j}) + " = " + std::to_string(got) +
                              ", recomputed " + std::to_string(expect));
            sum += got;
        }
        if (sum > peers.size())
            out.push_back("node " + std::to_string(i) + " has " + std::to_string(sum) +
                          " viewers > N");
        if (peers.node_viewers(node) != per_node[i])
            out.push_back("node " + std::to_string(i) + " viewer total mismatch");
    }
    return out;
}

std::vector<std::string> audit_registrations(const DirectoryStore& store, const Population& peers,
                                             const NamespaceStore& names)
{
    std::vector<std::string> out;
    std::size_t prefs = 0;
    for (std::uint32_t u = 0; u < peers.size(); ++u)
        for (const auto& [node, version] : peers.state(PeerId{u}).preferences) {
            ++prefs;
            const auto* rec = names.find(PeerId{u}, store.name_key(node));
            if (!rec || rec->content_ref != store.version(node, version).content_ref)
                out.push_back("peer " + std::to_string(u) + " registration for " +
                              ref_text({node, version}) + " missing or stale");
        }
    if (names.total_values() != prefs)
        out.push_back("namespace holds " + std::to_string(names.total_values()) +
                      " values for " + std::to_string(prefs) + " preferences");
    return out;
}

std::vector<std::string> audit_tree(const DirectoryStore& store)
{
    std::vector<std::string> out;
    std::vector<std::set<std::uint32_t>> linked_from(store.node_count() + 1);
    for (std::uint32_t i = 1; i <= store.node_count(); ++i) {
        const NodeId node{i};
        for (const auto& v : store.versions(node)) {
            if (v.kind != store.kind(node))
                out.push_back(ref_text(v.ref()) + " kind differs from its node");
            if (v.kind == NodeKind::file && !v.children.empty())
                out.push_back(ref_text(v.ref()) + " is a file with children");
            if (!(v.quality >= 0.0 && v.quality < 1.0))
                out.push_back(ref_text(v.ref()) + " quality out of range");
            for (auto c : v.children) {
                if (!store.contains(c)) {
                    out.push_back(ref_text(v.ref()) + " links to unknown node");
                    continue;
                }
                linked_from[c.value].insert(i);
            }
        }
    }
    if (!linked_from.empty() && store.contains(kRootNode) && !linked_from[1].empty())
        out.push_back("root is linked from another node");
    for (std::uint32_t i = 2; i <= store.node_count(); ++i) {
        const auto& parents = linked_from[i];
        const auto recorded = store.parent(NodeId{i}).value;
        if (parents.size() != 1 || *parents.begin() != recorded)
            out.push_back("node " + std::to_string(i) + " linked from " +
                          std::to_string(parents.size()) + " parents");
    }
    return out;
}

std::vector<std::string> audit_path(const DirectoryStore& store, const TraversalRecord& rec)
{
    std::vector<std::string> out;
    for (const auto& r : rec.path)
        if (store.version(r).kind == NodeKind::file)
            out.push_back("file " + ref_text(r) + " on traversal path");
    return out;
}

void VersionLedger::record(const DirectoryStore& store)
{
    for (std::uint32_t i = 1; i <= store.node_count(); ++i)
        for (const auto& v : store.versions(NodeId{i}))
            copies_.try_emplace(v.ref(), v);
}

std::vector<std::string> VersionLedger::check(const DirectoryStore& store) const
{
    std::vector<std::string> out;
    for (const auto& [ref, copy] : copies_) {
        if (!store.contains(ref.node) || ref.version > store.version_count(ref.node)) {
            out.push_back(ref_text(ref) + " disappeared");
            continue;
        }
        const auto& v = store.version(ref);
        if (v.quality != copy.quality || v.kind != copy.kind || v.children != copy.children ||
            v.created_at != copy.created_at || v.content_ref != copy.content_ref)
            out.push_back(ref_text(ref) + " changed after creation");
    }
    return out;
}

std::vector<std::string> audit_all(const Simulation& sim)
{
    auto out = audit_popularity(sim.store(), sim.peers());
    for (auto& s : audit_registrations(sim.store(), sim.peers(), sim.names()))
        out.push_back(std::move(s));
    for (auto& s : audit_tree(sim.store()))
        out.push_back(std::move(s));
    return out;
}

} // namespace popns::testing
