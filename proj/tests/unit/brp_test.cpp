#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "zrpsim/network.hpp"

using namespace zrpsim;

namespace {

LinkStateDatabase full_view(const oracle::Graph& g) {
  LinkStateDatabase db;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    std::vector<NodeId> links;
    for (auto u : g.adj[v]) {
      links.push_back(NodeId{u});
    }
    db.set_links(NodeId{v}, links);
  }
  return db;
}

const QueryId kQ{NodeId{0}, 1};

/// Query transmissions for one discovery from src to dst after convergence.
std::uint64_t discovery_cost(const oracle::Graph& g, std::uint32_t alpha, std::uint32_t src,
                             std::uint32_t dst, bool* replied = nullptr) {
  Network net(oracle::static_scenario(alpha), oracle::topology(g), {});
  net.run_until(5.0);
  const auto before = net.channel().stats().transmitted(PacketKind::Query);
  DataPacket p;
  p.src = NodeId{src};
  p.dst = NodeId{dst};
  p.payload_size = 64;
  p.sent_at = 5.0;
  net.router(NodeId{src}).ierp().send_data(p);
  net.run_until(7.0);
  if (replied != nullptr) {
    *replied = net.router(NodeId{src}).ierp().cache().lookup(NodeId{dst}, 7.0) != nullptr;
  }
  return net.channel().stats().transmitted(PacketKind::Query) - before;
}

}  // namespace

TEST_CASE("a query is processed once per node") {
  QueryCoverage c(10.0);
  CHECK(c.should_relay(kQ, 0.0));
  CHECK_FALSE(c.should_relay(kQ, 1.0));
  CHECK(c.processed(kQ, 1.0));
  CHECK(c.should_relay(QueryId{NodeId{0}, 2}, 1.0));
}

TEST_CASE("coverage merges, sorts and expires") {
  QueryCoverage c(10.0);
  const std::vector<NodeId> none;
  c.record_coverage(kQ, none, 0.0);
  CHECK(c.size() == 0);
  c.record_coverage(kQ, std::vector<NodeId>{NodeId{5}, NodeId{2}}, 0.0);
  c.record_coverage(kQ, std::vector<NodeId>{NodeId{3}, NodeId{2}}, 1.0);
  CHECK(c.covered(kQ, 1.0) == std::vector<NodeId>{NodeId{2}, NodeId{3}, NodeId{5}});
  CHECK(c.is_covered(kQ, NodeId{3}, 9.9));
  CHECK_FALSE(c.is_covered(kQ, NodeId{3}, 10.0));
  c.purge(10.0);
  CHECK(c.size() == 0);
  CHECK(c.should_relay(kQ, 11.0));
}

TEST_CASE("Y-shaped zone: two targets behind one next hop") {
  // 0 - 1 - {2, 3}, with 2 - 4 and 3 - 5 beyond the radius.
  const auto g = oracle::make_graph(6, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
  const ZoneTable z = compute_zone(NodeId{0}, full_view(g), 2);
  QueryCoverage c(10.0);
  const BordercastPlan plan = plan_bordercast(z, c, kQ, 0.0);
  CHECK(plan.targets == std::vector<NodeId>{NodeId{2}, NodeId{3}});
  CHECK(plan.distinct_next_hops() == 1);
  REQUIRE(plan.branches.size() == 2);
  CHECK(plan.branches[0] == NodePath{NodeId{0}, NodeId{1}, NodeId{2}});
  CHECK(c.covered(kQ, 0.0) == std::vector<NodeId>{NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}});
  CHECK(plan_bordercast(z, c, kQ, 0.0).empty());
}

TEST_CASE("covered peripheral nodes are not targeted again") {
  const auto g = oracle::make_graph(6, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
  const ZoneTable z = compute_zone(NodeId{0}, full_view(g), 2);
  QueryCoverage c(10.0);
  c.record_coverage(kQ, std::vector<NodeId>{NodeId{2}}, 0.0);
  const BordercastPlan plan = plan_bordercast(z, c, kQ, 0.0);
  CHECK(plan.targets == std::vector<NodeId>{NodeId{3}});
}

TEST_CASE("Y graph discovery costs one bordercast and one relay") {
  const auto g = oracle::make_graph(6, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 5}});
  bool replied = false;
  // 0 bordercasts, 1 relays to {2,3}; 2 and 3 have 4 and 5 in zone.
  CHECK(discovery_cost(g, 2, 0, 5, &replied) == 2);
  CHECK(replied);
}

TEST_CASE("3x3 grid: bordercast never costs more than flooding") {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t r = 0; r < 3; ++r) {
    for (std::uint32_t c = 0; c < 3; ++c) {
      const std::uint32_t v = 3 * r + c;
      if (c < 2) {
        edges.emplace_back(v, v + 1);
      }
      if (r < 2) {
        edges.emplace_back(v, v + 3);
      }
    }
  }
  const auto g = oracle::make_graph(9, edges);
  for (std::uint32_t alpha : {1u, 2u, 3u}) {
    for (std::uint32_t dst = 1; dst < 9; ++dst) {
      if (oracle::distances(g, 0)[dst] <= static_cast<int>(alpha)) {
        continue;
      }
      bool replied = false;
      const auto cost = discovery_cost(g, alpha, 0, dst, &replied);
      CAPTURE(alpha);
      CAPTURE(dst);
      CHECK(cost <= oracle::flood_transmissions(g, 0, dst));
      CHECK(replied);
    }
  }
}

TEST_CASE("relays act only on branches where the sender is their predecessor") {
  // 0 - 1 - 2 - 3, radius 2. A frame from 1 naming 1 -> 2 as a hop
  // makes 2 the relay; one naming 0 -> 2 does not.
  const auto g = oracle::make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  Network net(oracle::static_scenario(2), oracle::topology(g), {});
  net.run_until(5.0);
  BrpAgent& brp = net.router(NodeId{2}).brp();
  RouteQuery q{QueryId{NodeId{0}, 99}, NodeId{0}, NodeId{3}, {NodeId{0}}, {}};
  brp.on_bordercast(BordercastQuery{q, NodeId{0}, {{NodeId{0}, NodeId{2}, NodeId{3}}}},
                    NodeId{1});
  CHECK(brp.stats().relays == 0);
  brp.on_bordercast(
      BordercastQuery{q, NodeId{0}, {{NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}}}}, NodeId{1});
  CHECK(brp.stats().relays == 1);
}
