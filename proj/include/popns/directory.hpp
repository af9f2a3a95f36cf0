#pragma once

#include "popns/errors.hpp"
#include "popns/ids.hpp"
#include "popns/key.hpp"
#include "popns/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace popns {

using Step = std::uint64_t;

enum class NodeKind : std::uint8_t { directory, file };

const char* to_string(NodeKind kind);

/// One immutable version of a node. Children are node-level links.
struct NodeVersion {
    NodeId node;
    VersionNo version = 0;
    double quality = 0.0;
    NodeKind kind = NodeKind::directory;
    std::vector<NodeId> children;
    Step created_at = 0;
    Key content_ref;

    std::size_t degree() const { return children.size(); }
    bool is_directory() const { return kind == NodeKind::directory; }
    VersionRef ref() const { return {node, version}; }
};

/// Quality of a version whose uniform draw was `p`: p^s.
double quality_from_draw(double p, double s);

/// Draw a version quality. P[Q < q] = q^(1/s), E[Q] = 1/(1+s).
double sample_quality(double s, Rng& rng);

/// Expected fraction of versions with quality in (a, b]: b^(1/s) - a^(1/s).
double expected_fraction(double a, double b, double s);

std::string node_name(NodeId node);

class DirectoryStore {
public:
    /// Creates a node with a single version 1 and returns its id.
    /// `parent` is the node whose new version links to it (none for the root).
    NodeId add_node(NodeKind kind, double quality, std::vector<NodeId> children, Step t,
                    NodeId parent = NodeId{});

    /// Appends version n_i + 1 to `node`.
    VersionNo add_version(NodeId node, double quality, std::vector<NodeId> children, Step t);

    bool contains(NodeId node) const { return node.value >= 1 && node.value <= nodes_.size(); }
    void require(NodeId node) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t version_count(NodeId node) const;
    std::size_t total_versions() const { return total_versions_; }

    const NodeVersion& version(NodeId node, VersionNo v) const;
    const NodeVersion& version(VersionRef ref) const { return version(ref.node, ref.version); }
    std::span<const NodeVersion> versions(NodeId node) const;

    NodeKind kind(NodeId node) const;
    NodeId parent(NodeId node) const;
    const Key& name_key(NodeId node) const;

private:
    struct NodeRecord {
        NodeKind kind;
        NodeId parent;
        Key name_key;
        std::vector<NodeVersion> versions;
    };

    Key issue_key(const std::string& text);
    NodeId emplace_node(NodeKind kind, double quality, std::vector<NodeId> children, Step t,
                        NodeId parent);

    friend void init_control_tree(DirectoryStore& store);

    std::vector<NodeRecord> nodes_;
    std::unordered_set<Key> issued_;
    std::size_t total_versions_ = 0;
};

/// Four directories of quality 0.5: root 1 linking to 2, 3 and 4.
void init_control_tree(DirectoryStore& store);

struct MainTreeEntry {
    VersionRef ref;
    double quality = 0.0;
    NodeKind kind = NodeKind::directory;
    std::int64_t parent = -1; // index into MainTree::entries, -1 for the root
};

/// Tree a preference-free peer would browse: most popular version of every
/// reached node, ties broken uniformly at random. Entries are in DFS preorder.
struct MainTree {
    std::vector<MainTreeEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    double average_quality() const;
};

/// Uniform pick among the versions of `node` with the largest viewer count.
/// All versions tie when nobody views the node.
template <class Viewers>
VersionNo most_popular_version(const DirectoryStore& store, NodeId node, Viewers&& viewers,
                               Rng& rng)
{
    const auto n = static_cast<VersionNo>(store.version_count(node));
    std::uint64_t best = 0;
    std::size_t ties = 0;
    VersionNo chosen = 1;
    // Reservoir sampling over the tied maxima.
    for (VersionNo j = 1; j <= n; ++j) {
        const std::uint64_t c = viewers(node, j);
        if (c > best || ties == 0) {
            best = c;
            ties = 1;
            chosen = j;
        } else if (c == best) {
            ++ties;
            if (rng.below(ties) == 0)
                chosen = j;
        }
    }
    return chosen;
}

template <class Viewers>
MainTree main_tree(const DirectoryStore& store, Viewers&& viewers, Rng& rng)
{
    MainTree tree;
    if (!store.contains(kRootNode))
        return tree;

    struct Pending {
        NodeId node;
        std::int64_t parent;
    };
    std::vector<Pending> stack{{kRootNode, -1}};
    while (!stack.empty()) {
        auto [node, parent] = stack.back();
        stack.pop_back();
        const auto j = most_popular_version(store, node, viewers, rng);
        const auto& v = store.version(node, j);
        const auto self = static_cast<std::int64_t>(tree.entries.size());
        tree.entries.push_back({v.ref(), v.quality, v.kind, parent});
        for (auto it = v.children.rbegin(); it != v.children.rend(); ++it)
            stack.push_back({*it, self});
    }
    return tree;
}

} // namespace popns
