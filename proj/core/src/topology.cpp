#include "zrpsim/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace zrpsim {

UnitDiskTopology::UnitDiskTopology(std::shared_ptr<const PositionSource> positions, double range)
    : positions_(std::move(positions)), range_(range), range_sq_(range * range) {
  if (!positions_) {
    throw std::invalid_argument("UnitDiskTopology requires a position source");
  }
  if (!(range > 0.0)) {
    throw std::invalid_argument("radio range must be positive");
  }
}

void UnitDiskTopology::refresh(SimTime t) const {
  if (t == snapshot_time_ && snapshot_.size() == positions_->node_count()) {
    return;
  }
  const std::size_t n = positions_->node_count();
  snapshot_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    snapshot_[i] = positions_->position(NodeId{static_cast<std::uint32_t>(i)}, t);
  }
  snapshot_time_ = t;
}

bool UnitDiskTopology::linked(NodeId a, NodeId b, SimTime t) const {
  if (a == b) {
    return false;
  }
  refresh(t);
  const Point pa = snapshot_.at(a.value);
  const Point pb = snapshot_.at(b.value);
  const double dx = pa.x - pb.x;
  const double dy = pa.y - pb.y;
  return dx * dx + dy * dy <= range_sq_;
}

void UnitDiskTopology::neighbors(NodeId node, SimTime t, std::vector<NodeId>& out) const {
  out.clear();
  refresh(t);
  const Point p = snapshot_.at(node.value);
  for (std::size_t i = 0; i < snapshot_.size(); ++i) {
    if (i == node.value) {
      continue;
    }
    const double dx = snapshot_[i].x - p.x;
    const double dy = snapshot_[i].y - p.y;
    if (dx * dx + dy * dy <= range_sq_) {
      out.push_back(NodeId{static_cast<std::uint32_t>(i)});
    }
  }
}

GraphTopology::GraphTopology(std::size_t nodes) : adjacency_(nodes) {}

GraphTopology::GraphTopology(std::size_t nodes,
                             const std::vector<std::pair<NodeId, NodeId>>& edges)
    : adjacency_(nodes) {
  for (const auto& [a, b] : edges) {
    add_edge(a, b);
  }
}

void GraphTopology::add_edge(NodeId a, NodeId b) {
  if (a == b) {
    throw std::invalid_argument("self-loops are not allowed");
  }
  auto insert = [](std::vector<NodeId>& list, NodeId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) {
      list.insert(it, v);
    }
  };
  insert(adjacency_.at(a.value), b);
  insert(adjacency_.at(b.value), a);
}

void GraphTopology::remove_edge(NodeId a, NodeId b) {
  auto erase = [](std::vector<NodeId>& list, NodeId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v) {
      list.erase(it);
    }
  };
  erase(adjacency_.at(a.value), b);
  erase(adjacency_.at(b.value), a);
}

bool GraphTopology::linked(NodeId a, NodeId b, SimTime) const {
  const auto& list = adjacency_.at(a.value);
  return std::binary_search(list.begin(), list.end(), b);
}

void GraphTopology::neighbors(NodeId node, SimTime, std::vector<NodeId>& out) const {
  out = adjacency_.at(node.value);
}

}  // namespace zrpsim
