#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace popns {

template <class Tag>
struct StrongId {
    std::uint32_t value = 0;

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct NodeTag {};
struct PeerTag {};

/// Node index, assigned sequentially from 1. Node 1 is the root.
using NodeId = StrongId<NodeTag>;
/// Peer slot in [0, N).
using PeerId = StrongId<PeerTag>;
/// Version number of a node, 1-based.
using VersionNo = std::uint32_t;

inline constexpr NodeId kRootNode{1};

/// A specific version of a specific node.
struct VersionRef {
    NodeId node;
    VersionNo version = 0;

    friend constexpr auto operator<=>(const VersionRef&, const VersionRef&) = default;
};

} // namespace popns

template <class Tag>
struct std::hash<popns::StrongId<Tag>> {
    std::size_t operator()(popns::StrongId<Tag> id) const noexcept
    {
        return std::hash<std::uint32_t>{}(id.value);
    }
};

template <>
struct std::hash<popns::VersionRef> {
    std::size_t operator()(const popns::VersionRef& r) const noexcept
    {
        return (static_cast<std::size_t>(r.node.value) << 32) ^ r.version;
    }
};
