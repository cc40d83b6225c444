#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "zrpsim/types.hpp"

namespace zrpsim {

/// Neighbor-discovery beacon. The sender id travels in the frame header.
struct Hello {};

struct LinkStateUpdate {
  NodeId origin;
  std::vector<NodeId> neighbor_list;  // ascending
  std::uint32_t seq_no = 0;
  std::uint32_t ttl = 0;
};

struct QueryId {
  NodeId source;
  std::uint32_t query_seq = 0;

  constexpr auto operator<=>(const QueryId&) const = default;
};

struct RouteQuery {
  QueryId qid;
  NodeId src;
  NodeId dst;
  NodePath accumulated_route;         // src first
  std::vector<NodeId> covered_summary;  // ascending
};

/// A route query on the air. `branches` describes the bordercast tree: each
/// branch is the intrazone path bordercaster -> peripheral target. A receiver
/// acts only on branches where the transmitting node is its predecessor.
struct BordercastQuery {
  RouteQuery query;
  NodeId bordercaster;
  std::vector<NodePath> branches;
};

/// Position within a source route. `path[index]` is the current holder.
struct SourceRoute {
  NodePath path;
  std::size_t index = 0;

  NodeId holder() const { return path.at(index); }
  bool at_end() const { return index + 1 >= path.size(); }
  NodeId next() const { return path.at(index + 1); }
};

struct RouteReply {
  QueryId qid;
  NodePath full_route;  // src ... dst
  SourceRoute back;     // replier ... src
};

/// Notice sent back toward a source when its route to `dst` broke beyond
/// repair.
struct RouteError {
  NodeId dst;
  SourceRoute back;
};

struct DataPacket {
  std::uint32_t flow = 0;
  std::uint32_t seq = 0;
  NodeId src;
  NodeId dst;
  SimTime sent_at = 0.0;
  std::uint32_t payload_size = 0;
  /// Empty path: forwarded hop by hop with intrazone tables.
  SourceRoute route;
  std::uint32_t hops = 0;
};

using RoutingPacket =
    std::variant<Hello, LinkStateUpdate, BordercastQuery, RouteReply, RouteError, DataPacket>;

enum class PacketKind : std::uint8_t { Hello, Lsu, Query, Reply, Error, Data };
inline constexpr std::size_t kPacketKinds = 6;

PacketKind kind_of(const RoutingPacket& packet) noexcept;
const char* to_string(PacketKind kind) noexcept;

inline constexpr std::uint32_t kHelloBytes = 32;
inline constexpr std::uint32_t kLsuBaseBytes = 32;
inline constexpr std::uint32_t kQueryBaseBytes = 64;
inline constexpr std::uint32_t kRouteErrorBytes = 32;
inline constexpr std::uint32_t kBytesPerNodeEntry = 8;

/// Network-layer size of a packet, excluding link-layer framing.
std::uint32_t payload_bytes(const RoutingPacket& packet) noexcept;

}  // namespace zrpsim
