#pragma once

#include <memory>
#include <vector>

#include "zrpsim/channel.hpp"
#include "zrpsim/engine.hpp"
#include "zrpsim/mobility.hpp"
#include "zrpsim/router.hpp"
#include "zrpsim/scenario.hpp"
#include "zrpsim/topology.hpp"
#include "zrpsim/traffic.hpp"

namespace zrpsim {

/// `flows` distinct ordered (src, dst) pairs drawn from the traffic stream,
/// each active over [traffic.start, traffic.stop).
std::vector<CbrFlow> draw_flows(const Scenario& s);

/// A fully wired simulation: engine, radio, one router per node, traffic.
class Network {
 public:
  /// Random-waypoint placement (frozen when mobility is disabled) over a
  /// unit-disk radio, flows from draw_flows.
  explicit Network(const Scenario& s);
  /// Fixed connectivity and explicit flows; mobility and terrain are unused.
  Network(const Scenario& s, std::shared_ptr<const Topology> topology, std::vector<CbrFlow> flows);

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  void run_until(SimTime t);
  void run() { run_until(scenario_.horizon); }

  MetricsReport report() const;
  /// hello + LSU + query + reply + route-error transmissions so far.
  std::uint64_t control_packets() const;

  const Scenario& scenario() const noexcept { return scenario_; }
  Engine& engine() noexcept { return engine_; }
  Channel& channel() noexcept { return *channel_; }
  const Topology& topology() const noexcept { return *topology_; }
  ZrpRouter& router(NodeId node) { return *routers_.at(node.value); }
  std::size_t size() const noexcept { return routers_.size(); }
  const FlowRecorder& recorder() const noexcept { return recorder_; }
  const std::vector<CbrFlow>& flows() const noexcept { return flows_; }

 private:
  void wire();

  Scenario scenario_;
  Engine engine_;
  std::shared_ptr<RandomWaypoint> mobility_;
  std::shared_ptr<const Topology> topology_;
  std::unique_ptr<Channel> channel_;
  std::vector<std::unique_ptr<ZrpRouter>> routers_;
  std::vector<CbrFlow> flows_;
  FlowRecorder recorder_;
};

/// Builds the network, runs it to the horizon and returns the metrics.
MetricsReport run_scenario(const Scenario& s);

}  // namespace zrpsim
