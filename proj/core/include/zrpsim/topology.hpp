#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "zrpsim/mobility.hpp"
#include "zrpsim/types.hpp"

namespace zrpsim {

/// Who can hear whom at a given instant.
class Topology {
 public:
  virtual ~Topology() = default;

  virtual std::size_t node_count() const = 0;
  virtual bool linked(NodeId a, NodeId b, SimTime t) const = 0;
  /// Fills `out` with every node linked to `node` at t, ascending, excluding
  /// `node` itself.
  virtual void neighbors(NodeId node, SimTime t, std::vector<NodeId>& out) const = 0;

  std::vector<NodeId> neighbors(NodeId node, SimTime t) const {
    std::vector<NodeId> out;
    neighbors(node, t, out);
    return out;
  }
};

/// Unit-disk connectivity: two distinct nodes are linked iff their Euclidean
/// distance is at most `range`. Symmetric by construction.
class UnitDiskTopology final : public Topology {
 public:
  UnitDiskTopology(std::shared_ptr<const PositionSource> positions, double range);

  std::size_t node_count() const override { return positions_->node_count(); }
  bool linked(NodeId a, NodeId b, SimTime t) const override;
  void neighbors(NodeId node, SimTime t, std::vector<NodeId>& out) const override;

  double range() const noexcept { return range_; }

 private:
  void refresh(SimTime t) const;

  std::shared_ptr<const PositionSource> positions_;
  double range_;
  double range_sq_;
  mutable std::vector<Point> snapshot_;
  mutable SimTime snapshot_time_ = -1.0;
};

/// Fixed graph, independent of time. Used for static scenarios and tests.
class GraphTopology final : public Topology {
 public:
  explicit GraphTopology(std::size_t nodes);
  GraphTopology(std::size_t nodes, const std::vector<std::pair<NodeId, NodeId>>& edges);

  void add_edge(NodeId a, NodeId b);
  void remove_edge(NodeId a, NodeId b);

  std::size_t node_count() const override { return adjacency_.size(); }
  bool linked(NodeId a, NodeId b, SimTime t) const override;
  void neighbors(NodeId node, SimTime t, std::vector<NodeId>& out) const override;

  const std::vector<NodeId>& adjacent(NodeId node) const { return adjacency_.at(node.value); }

 private:
  std::vector<std::vector<NodeId>> adjacency_;
};

}  // namespace zrpsim
