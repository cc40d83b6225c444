#include "zrpsim/zone.hpp"

#include <algorithm>

namespace zrpsim {

bool LinkStateDatabase::set_links(NodeId origin, std::vector<NodeId> neighbors) {
  if (origin.value >= slots_.size()) {
    slots_.resize(origin.value + 1);
  }
  std::sort(neighbors.begin(), neighbors.end());
  neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
  Slot& slot = slots_[origin.value];
  if (slot.present && slot.links == neighbors) {
    return false;
  }
  slot.present = true;
  slot.links = std::move(neighbors);
  return true;
}

bool LinkStateDatabase::erase(NodeId origin) {
  if (origin.value >= slots_.size() || !slots_[origin.value].present) {
    return false;
  }
  slots_[origin.value] = Slot{};
  return true;
}

std::span<const NodeId> LinkStateDatabase::links_from(NodeId origin) const {
  if (origin.value >= slots_.size()) {
    return {};
  }
  return slots_[origin.value].links;
}

bool LinkStateDatabase::has(NodeId origin) const {
  return origin.value < slots_.size() && slots_[origin.value].present;
}

std::size_t LinkStateDatabase::link_count() const {
  std::size_t n = 0;
  for (const Slot& s : slots_) {
    n += s.links.size();
  }
  return n;
}

namespace {

struct ByNode {
  bool operator()(const std::pair<NodeId, ZoneRoute>& e, NodeId n) const { return e.first < n; }
};

}  // namespace

bool ZoneTable::contains(NodeId node) const {
  auto it = std::lower_bound(routes_.begin(), routes_.end(), node, ByNode{});
  return it != routes_.end() && it->first == node;
}

std::optional<ZoneRoute> ZoneTable::route(NodeId node) const {
  auto it = std::lower_bound(routes_.begin(), routes_.end(), node, ByNode{});
  if (it == routes_.end() || it->first != node) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<NodeId> ZoneTable::next_hop(NodeId dst) const {
  auto r = route(dst);
  if (!r) {
    return std::nullopt;
  }
  return r->next_hop;
}

NodePath ZoneTable::path_to(NodeId dst) const {
  auto r = route(dst);
  if (!r) {
    return {};
  }
  NodePath path(r->hop_count + 1);
  NodeId cur = dst;
  for (std::size_t i = r->hop_count; i > 0; --i) {
    path[i] = cur;
    cur = route(cur)->parent;
  }
  path[0] = self_;
  return path;
}

std::vector<NodeId> ZoneTable::members() const {
  std::vector<NodeId> out;
  out.reserve(routes_.size());
  for (const auto& [n, r] : routes_) {
    out.push_back(n);
  }
  return out;
}

ZoneTable compute_zone(NodeId self, const LinkStateDatabase& links, std::uint32_t alpha) {
  ZoneTable table(self, alpha);
  if (alpha == 0) {
    return table;
  }
  constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
  std::vector<std::uint32_t> depth;
  std::vector<NodeId> first_hop;
  std::vector<NodeId> parent;
  auto touch = [&](NodeId n) {
    if (n.value >= depth.size()) {
      depth.resize(n.value + 1, kUnseen);
      first_hop.resize(n.value + 1);
      parent.resize(n.value + 1);
    }
  };
  touch(self);
  depth[self.value] = 0;

  std::vector<NodeId> frontier{self};
  std::vector<NodeId> next;
  std::vector<NodeId> reached;
  for (std::uint32_t d = 0; d < alpha && !frontier.empty(); ++d) {
    next.clear();
    for (NodeId u : frontier) {  // ascending, so the first parent found is the lowest
      for (NodeId v : links.links_from(u)) {
        touch(v);
        if (depth[v.value] != kUnseen) {
          continue;
        }
        depth[v.value] = d + 1;
        parent[v.value] = u;
        first_hop[v.value] = d == 0 ? v : first_hop[u.value];
        next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    reached.insert(reached.end(), next.begin(), next.end());
    std::swap(frontier, next);
  }

  std::sort(reached.begin(), reached.end());
  table.routes_.reserve(reached.size());
  for (NodeId n : reached) {
    const std::uint32_t hops = depth[n.value];
    table.routes_.emplace_back(n, ZoneRoute{first_hop[n.value], hops, parent[n.value]});
    (hops == alpha ? table.peripheral_ : table.interior_).push_back(n);
  }
  return table;
}

}  // namespace zrpsim
