#pragma once

// Reference computations used by the tests. Nothing here calls into the
// routing code; graphs are plain adjacency lists.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "zrpsim/scenario.hpp"
#include "zrpsim/topology.hpp"

namespace oracle {

struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::vector<std::uint32_t>> adj;  // ascending

  bool has_edge(std::uint32_t a, std::uint32_t b) const;
};

Graph make_graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

/// Random spanning tree plus each remaining pair with probability p.
Graph random_connected(std::mt19937_64& rng, std::size_t n, double p);

/// Every connected labeled graph on n nodes (n <= 6 keeps this small).
std::vector<Graph> all_connected(std::size_t n);

bool connected(const Graph& g);

/// Hop distances from src, -1 when unreachable. Optionally never expands
/// through `blocked`.
std::vector<int> distances(const Graph& g, std::uint32_t src, int blocked = -1);

struct ZoneEntry {
  int hops = 0;
  std::vector<std::uint32_t> first_hops;  // every neighbor starting a shortest path
};

/// Truncated BFS: nodes within alpha hops of self (self excluded).
std::map<std::uint32_t, ZoneEntry> zone(const Graph& g, std::uint32_t self, int alpha);

/// Transmissions of a blind flood from src looking for dst: every node that
/// receives the query rebroadcasts it once, except dst.
std::size_t flood_transmissions(const Graph& g, std::uint32_t src, std::uint32_t dst);

/// Consecutive entries adjacent, no repeats.
bool simple_path(const Graph& g, const std::vector<std::uint32_t>& path);

std::shared_ptr<zrpsim::GraphTopology> topology(const Graph& g);

/// Defaults with mobility off; suitable for fixed-graph networks.
zrpsim::Scenario static_scenario(std::uint32_t alpha, std::uint64_t seed = 1);

}  // namespace oracle
