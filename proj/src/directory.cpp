#include "popns/directory.hpp"

#include <cmath>
#include <numeric>

namespace popns {

const char* to_string(NodeKind kind)
{
    return kind == NodeKind::directory ? "directory" : "file";
}

double quality_from_draw(double p, double s)
{
    if (!(s > 0.0))
        throw ParameterError("quality parameter s must be positive");
    if (!(p >= 0.0 && p < 1.0))
        throw ParameterError("quality draw must lie in [0,1)");
    return std::pow(p, s);
}

double sample_quality(double s, Rng& rng)
{
    if (!(s > 0.0))
        throw ParameterError("quality parameter s must be positive");
    return quality_from_draw(rng.uniform(), s);
}

double expected_fraction(double a, double b, double s)
{
    if (!(s > 0.0))
        throw ParameterError("quality parameter s must be positive");
    if (!(a >= 0.0 && a <= b && b <= 1.0))
        throw ParameterError("expected_fraction requires 0 <= a <= b <= 1");
    return std::pow(b, 1.0 / s) - std::pow(a, 1.0 / s);
}

std::string node_name(NodeId node)
{
    return "node-" + std::to_string(node.value);
}

Key DirectoryStore::issue_key(const std::string& text)
{
    auto key = Key::of(text);
    if (!issued_.insert(key).second)
        throw CollisionError("digest collision on '" + text + "' (key " + key.hex() + ")");
    return key;
}

NodeId DirectoryStore::add_node(NodeKind kind, double quality, std::vector<NodeId> children,
                                Step t, NodeId parent)
{
    if (kind == NodeKind::file && !children.empty())
        throw StateError("a file node cannot have children");
    if (!(quality >= 0.0 && quality < 1.0))
        throw ParameterError("quality must lie in [0,1)");
    for (auto c : children)
        require(c);
    if (parent.value != 0)
        require(parent);
    return emplace_node(kind, quality, std::move(children), t, parent);
}

NodeId DirectoryStore::emplace_node(NodeKind kind, double quality, std::vector<NodeId> children,
                                    Step t, NodeId parent)
{
    const NodeId id{static_cast<std::uint32_t>(nodes_.size() + 1)};
    const auto name = node_name(id);
    NodeRecord rec{kind, parent, issue_key(name), {}};
    rec.versions.push_back({id, 1, quality, kind, std::move(children), t, issue_key(name + "@1")});
    nodes_.push_back(std::move(rec));
    ++total_versions_;
    return id;
}

VersionNo DirectoryStore::add_version(NodeId node, double quality, std::vector<NodeId> children,
                                      Step t)
{
    require(node);
    auto& rec = nodes_[node.value - 1];
    if (rec.kind == NodeKind::file && !children.empty())
        throw StateError("a file node cannot have children");
    if (!(quality >= 0.0 && quality < 1.0))
        throw ParameterError("quality must lie in [0,1)");
    const auto j = static_cast<VersionNo>(rec.versions.size() + 1);
    auto content = issue_key(node_name(node) + "@" + std::to_string(j));
    rec.versions.push_back({node, j, quality, rec.kind, std::move(children), t, content});
    ++total_versions_;
    return j;
}

void DirectoryStore::require(NodeId node) const
{
    if (!contains(node))
        throw StateError("unknown node " + std::to_string(node.value));
}

std::size_t DirectoryStore::version_count(NodeId node) const
{
    require(node);
    return nodes_[node.value - 1].versions.size();
}

const NodeVersion& DirectoryStore::version(NodeId node, VersionNo v) const
{
    require(node);
    const auto& versions = nodes_[node.value - 1].versions;
    if (v < 1 || v > versions.size())
        throw StateError("unknown version " + std::to_string(v) + " of node " +
                         std::to_string(node.value));
    return versions[v - 1];
}

std::span<const NodeVersion> DirectoryStore::versions(NodeId node) const
{
    require(node);
    return nodes_[node.value - 1].versions;
}

NodeKind DirectoryStore::kind(NodeId node) const
{
    require(node);
    return nodes_[node.value - 1].kind;
}

NodeId DirectoryStore::parent(NodeId node) const
{
    require(node);
    return nodes_[node.value - 1].parent;
}

const Key& DirectoryStore::name_key(NodeId node) const
{
    require(node);
    return nodes_[node.value - 1].name_key;
}

void init_control_tree(DirectoryStore& store)
{
    if (store.node_count() != 0)
        throw StateError("control tree requires an empty store");
    constexpr double kInitialQuality = 0.5;
    // The root links forward to ids 2..4, which are created right after it.
    store.emplace_node(NodeKind::directory, kInitialQuality, {NodeId{2}, NodeId{3}, NodeId{4}}, 0,
                       NodeId{});
    for (int i = 0; i < 3; ++i)
        store.emplace_node(NodeKind::directory, kInitialQuality, {}, 0, kRootNode);
}

double MainTree::average_quality() const
{
    if (entries.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& e : entries)
        sum += e.quality;
    return sum / static_cast<double>(entries.size());
}

} // namespace popns
