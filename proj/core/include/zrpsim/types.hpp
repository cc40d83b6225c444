#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace zrpsim {

/// Virtual time in seconds.
using SimTime = double;

/// Dense node identifier. Nodes of a network are numbered 0..n-1.
struct NodeId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const NodeId&) const = default;
};

inline constexpr NodeId kBroadcast{0xFFFFFFFFu};

std::ostream& operator<<(std::ostream& os, NodeId id);
std::string to_string(NodeId id);

/// Ordered node list used for source routes and zone paths.
using NodePath = std::vector<NodeId>;

}  // namespace zrpsim

template <>
struct std::hash<zrpsim::NodeId> {
  std::size_t operator()(zrpsim::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
