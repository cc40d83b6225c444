#include <doctest.h>

#include "oracles.hpp"
#include "zrpsim/network.hpp"

using namespace zrpsim;

TEST_CASE("LSUs never travel past the zone radius") {
  // Chain 0..7, radius 2: node 0 should hold link state only from 1 and 2.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i + 1 < 8; ++i) {
    edges.emplace_back(i, i + 1);
  }
  const auto g = oracle::make_graph(8, edges);
  Network net(oracle::static_scenario(2), oracle::topology(g), {});
  net.run_until(10.0);
  IarpAgent& iarp = net.router(NodeId{0}).iarp();
  CHECK(iarp.stored_seq(NodeId{1}).has_value());
  CHECK(iarp.stored_seq(NodeId{2}).has_value());
  CHECK_FALSE(iarp.stored_seq(NodeId{3}).has_value());
  CHECK(iarp.zone().size() == 2);
  CHECK(iarp.neighbor_ids() == std::vector<NodeId>{NodeId{1}});
}

TEST_CASE("stale, duplicate and spent LSUs are ignored") {
  const auto g = oracle::make_graph(3, {{0, 1}, {1, 2}});
  Network net(oracle::static_scenario(2), oracle::topology(g), {});
  net.run_until(0.0);
  IarpAgent& iarp = net.router(NodeId{1}).iarp();

  LinkStateUpdate lsu{NodeId{0}, {NodeId{1}}, 5, 2};
  CHECK(iarp.process_lsu(lsu));  // installed and relayed with ttl 1
  CHECK(*iarp.stored_seq(NodeId{0}) == 5);
  CHECK_FALSE(iarp.process_lsu(lsu));  // duplicate
  lsu.seq_no = 4;
  CHECK_FALSE(iarp.process_lsu(lsu));  // stale
  CHECK(*iarp.stored_seq(NodeId{0}) == 5);
  lsu.seq_no = 6;
  lsu.ttl = 1;
  CHECK_FALSE(iarp.process_lsu(lsu));  // installed, last hop
  CHECK(*iarp.stored_seq(NodeId{0}) == 6);
  lsu.seq_no = 7;
  lsu.ttl = 0;
  CHECK_FALSE(iarp.process_lsu(lsu));  // out of scope
  CHECK(*iarp.stored_seq(NodeId{0}) == 6);
  CHECK(iarp.stats().lsus_relayed == 1);
}

TEST_CASE("origin sends ttl alpha") {
  const auto g = oracle::make_graph(2, {{0, 1}});
  Network net(oracle::static_scenario(3), oracle::topology(g), {});
  const LinkStateUpdate lsu = net.router(NodeId{0}).iarp().originate_lsu();
  CHECK(lsu.ttl == 3);
  CHECK(lsu.origin == NodeId{0});
}

TEST_CASE("a silent neighbor expires and the zone shrinks") {
  auto topo = std::make_shared<GraphTopology>(
      3, std::vector<std::pair<NodeId, NodeId>>{{NodeId{0}, NodeId{1}}, {NodeId{1}, NodeId{2}}});
  Network net(oracle::static_scenario(2), topo, {});
  net.run_until(8.0);
  IarpAgent& iarp = net.router(NodeId{0}).iarp();
  CHECK(iarp.zone().contains(NodeId{2}));
  topo->remove_edge(NodeId{1}, NodeId{2});
  net.run_until(8.0 + 3.5 + 1.0);
  CHECK(net.router(NodeId{1}).iarp().neighbor_ids() == std::vector<NodeId>{NodeId{0}});
  net.run_until(20.0);
  CHECK_FALSE(iarp.zone().contains(NodeId{2}));
  CHECK(iarp.zone().contains(NodeId{1}));
}

TEST_CASE("link-layer failure drops the neighbor at once") {
  const auto g = oracle::make_graph(3, {{0, 1}, {0, 2}});
  Network net(oracle::static_scenario(1), oracle::topology(g), {});
  net.run_until(5.0);
  IarpAgent& iarp = net.router(NodeId{0}).iarp();
  REQUIRE(iarp.is_neighbor(NodeId{2}));
  iarp.on_link_failure(NodeId{2});
  CHECK_FALSE(iarp.is_neighbor(NodeId{2}));
  CHECK_FALSE(iarp.zone().contains(NodeId{2}));
}
