#include "zrpsim/network.hpp"

#include <set>
#include <utility>

namespace zrpsim {

std::vector<CbrFlow> draw_flows(const Scenario& s) {
  RngStream rng(s.seed, StreamPurpose::Traffic, NodeId{0});
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  std::vector<CbrFlow> flows;
  while (flows.size() < s.traffic.flows) {
    const auto src = static_cast<std::uint32_t>(rng.below(s.num_nodes));
    const auto dst = static_cast<std::uint32_t>(rng.below(s.num_nodes));
    if (src == dst || !used.emplace(src, dst).second) {
      continue;
    }
    CbrFlow f;
    f.id = static_cast<std::uint32_t>(flows.size());
    f.src = NodeId{src};
    f.dst = NodeId{dst};
    f.packet_size = s.traffic.packet_size;
    f.interval = s.traffic.interval();
    f.start_at = s.traffic.start;
    f.stop_at = s.traffic.stop;
    flows.push_back(f);
  }
  return flows;
}

Network::Network(const Scenario& s) : scenario_(s) {
  scenario_.validate();
  mobility_ = std::make_shared<RandomWaypoint>(s.seed, s.num_nodes, s.mobility, s.terrain);
  topology_ = std::make_shared<UnitDiskTopology>(mobility_, s.radio.range);
  flows_ = draw_flows(s);
  wire();
  mobility_->schedule_all(engine_, s.horizon);
}

Network::Network(const Scenario& s, std::shared_ptr<const Topology> topology,
                 std::vector<CbrFlow> flows)
    : scenario_(s), topology_(std::move(topology)), flows_(std::move(flows)) {
  scenario_.num_nodes = static_cast<std::uint32_t>(topology_->node_count());
  scenario_.validate();
  wire();
}

void Network::wire() {
  channel_ = std::make_unique<Channel>(engine_, topology_, scenario_.radio, scenario_.seed);
  routers_.reserve(scenario_.num_nodes);
  for (std::uint32_t i = 0; i < scenario_.num_nodes; ++i) {
    NodeContext ctx{NodeId{i}, &engine_, channel_.get(), scenario_.seed};
    routers_.push_back(std::make_unique<ZrpRouter>(ctx, scenario_.routing, &recorder_));
    channel_->attach(NodeId{i}, *routers_.back());
  }
  for (auto& r : routers_) {
    r->start();
  }
  for (const CbrFlow& f : flows_) {
    f.validate(scenario_.horizon);
    IerpAgent& ierp = routers_.at(f.src.value)->ierp();
    schedule_flow(f, engine_, recorder_, [&ierp](DataPacket p) { ierp.send_data(std::move(p)); });
  }
}

void Network::run_until(SimTime t) { engine_.run_until(t); }

std::uint64_t Network::control_packets() const {
  const ChannelStats& st = channel_->stats();
  return st.transmitted(PacketKind::Hello) + st.transmitted(PacketKind::Lsu) +
         st.transmitted(PacketKind::Query) + st.transmitted(PacketKind::Reply) +
         st.transmitted(PacketKind::Error);
}

MetricsReport Network::report() const {
  return finalize(recorder_, engine_.now(), scenario_.traffic.packet_size, control_packets());
}

MetricsReport run_scenario(const Scenario& s) {
  Network net(s);
  net.run();
  return net.report();
}

}  // namespace zrpsim
