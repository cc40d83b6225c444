#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zrpsim/types.hpp"

namespace zrpsim {

/// Directed links known to one node: origin -> advertised neighbors.
class LinkStateDatabase {
 public:
  /// Replaces the links of `origin`. Returns true if they changed.
  bool set_links(NodeId origin, std::vector<NodeId> neighbors);
  bool erase(NodeId origin);

  std::span<const NodeId> links_from(NodeId origin) const;
  bool has(NodeId origin) const;
  std::size_t link_count() const;

 private:
  struct Slot {
    bool present = false;
    std::vector<NodeId> links;  // ascending
  };
  std::vector<Slot> slots_;
};

struct ZoneRoute {
  NodeId next_hop;
  std::uint32_t hop_count = 0;
  NodeId parent;  // predecessor on the chosen shortest path
};

/// Shortest intrazone routes of one node for zone radius alpha, with the
/// interior/peripheral split of its zone members.
class ZoneTable {
 public:
  ZoneTable() = default;
  ZoneTable(NodeId self, std::uint32_t alpha) : self_(self), alpha_(alpha) {}

  NodeId self() const noexcept { return self_; }
  std::uint32_t alpha() const noexcept { return alpha_; }

  /// True for routed members; never for self.
  bool contains(NodeId node) const;
  std::optional<ZoneRoute> route(NodeId node) const;
  std::optional<NodeId> next_hop(NodeId dst) const;
  /// self ... dst along parents; empty if dst is not routed.
  NodePath path_to(NodeId dst) const;

  /// Zone members (excluding self), ascending.
  std::vector<NodeId> members() const;
  const std::vector<NodeId>& peripheral() const noexcept { return peripheral_; }
  const std::vector<NodeId>& interior() const noexcept { return interior_; }
  std::size_t size() const noexcept { return routes_.size(); }

  const std::vector<std::pair<NodeId, ZoneRoute>>& routes() const noexcept { return routes_; }

 private:
  friend ZoneTable compute_zone(NodeId, const LinkStateDatabase&, std::uint32_t);

  NodeId self_;
  std::uint32_t alpha_ = 0;
  std::vector<std::pair<NodeId, ZoneRoute>> routes_;  // ascending by node
  std::vector<NodeId> peripheral_;
  std::vector<NodeId> interior_;
};

/// Breadth-first search from `self` over `links`, truncated at `alpha` hops.
/// A node first reached at depth d takes the lowest-id node at depth d-1 that
/// links to it as its parent.
ZoneTable compute_zone(NodeId self, const LinkStateDatabase& links, std::uint32_t alpha);

}  // namespace zrpsim
