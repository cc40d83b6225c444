#include "zrpsim/channel.hpp"

#include <string>

namespace zrpsim {

void RadioConfig::validate() const {
  if (!(range > 0.0)) {
    throw std::invalid_argument("radio.range must be > 0");
  }
  if (!(data_rate > 0.0)) {
    throw std::invalid_argument("radio.data_rate must be > 0");
  }
  if (proc_delay < 0.0) {
    throw std::invalid_argument("radio.proc_delay must be >= 0");
  }
  if (loss_prob < 0.0 || loss_prob > 1.0) {
    throw std::invalid_argument("radio.loss_prob must lie in [0, 1]");
  }
}

double tx_delay(std::uint32_t size_bytes, const RadioConfig& cfg) noexcept {
  return static_cast<double>(size_bytes) * 8.0 / cfg.data_rate + cfg.proc_delay;
}

UnknownNode::UnknownNode(NodeId node)
    : std::out_of_range("unknown node " + to_string(node)) {}

Channel::Channel(Engine& engine, std::shared_ptr<const Topology> topology, RadioConfig cfg,
                 std::uint64_t seed)
    : engine_(engine), topology_(std::move(topology)), cfg_(cfg), seed_(seed) {
  cfg_.validate();
  if (!topology_) {
    throw std::invalid_argument("Channel requires a topology");
  }
  sinks_.assign(topology_->node_count(), nullptr);
  loss_rng_.resize(topology_->node_count());
}

void Channel::attach(NodeId node, FrameSink& sink) {
  if (node.value >= sinks_.size()) {
    throw UnknownNode(node);
  }
  sinks_[node.value] = &sink;
}

bool Channel::attached(NodeId node) const noexcept {
  return node.value < sinks_.size() && sinks_[node.value] != nullptr;
}

bool Channel::in_range(NodeId a, NodeId b) const {
  return topology_->linked(a, b, engine_.now());
}

std::vector<NodeId> Channel::neighbors(NodeId node) const {
  return topology_->neighbors(node, engine_.now());
}

bool Channel::drop_frame(NodeId src) {
  if (cfg_.loss_prob <= 0.0) {
    return false;
  }
  auto& rng = loss_rng_[src.value];
  if (!rng) {
    rng.emplace(seed_, StreamPurpose::Loss, src);
  }
  return rng->uniform01() < cfg_.loss_prob;
}

Frame Channel::make_frame(NodeId src, NodeId dst, RoutingPacket&& packet) {
  const std::uint32_t size = payload_bytes(packet) + cfg_.frame_overhead;
  ++stats_.transmissions[static_cast<std::size_t>(kind_of(packet))];
  return Frame{src, dst, std::make_shared<const RoutingPacket>(std::move(packet)), size};
}

std::vector<NodeId> Channel::broadcast(NodeId src, RoutingPacket packet) {
  if (!attached(src)) {
    throw UnknownNode(src);
  }
  const SimTime now = engine_.now();
  topology_->neighbors(src, now, scratch_);
  Frame frame = make_frame(src, kBroadcast, std::move(packet));

  std::vector<NodeId> receivers;
  receivers.reserve(scratch_.size());
  for (NodeId n : scratch_) {
    if (!attached(n)) {
      continue;
    }
    if (drop_frame(src)) {
      ++stats_.lost;
      continue;
    }
    receivers.push_back(n);
  }
  if (tap_) {
    tap_(frame, now);
  }
  if (receivers.empty()) {
    return receivers;
  }
  stats_.deliveries += receivers.size();
  // One event hands the frame to every receiver in ascending order, which is
  // the same dispatch order as one event per receiver.
  engine_.schedule(
      now + tx_delay(frame.size, cfg_),
      [this, frame, receivers] {
        for (NodeId r : receivers) {
          sinks_[r.value]->receive(frame);
        }
      },
      EventTag{static_cast<std::uint16_t>(10 + static_cast<int>(kind_of(*frame.payload))),
               src.value});
  return receivers;
}

UnicastOutcome Channel::unicast(NodeId src, NodeId next_hop, RoutingPacket packet) {
  if (!attached(src)) {
    throw UnknownNode(src);
  }
  if (!attached(next_hop)) {
    throw UnknownNode(next_hop);
  }
  const SimTime now = engine_.now();
  if (!topology_->linked(src, next_hop, now)) {
    ++stats_.link_broken;
    return UnicastOutcome::LinkBroken;
  }
  Frame frame = make_frame(src, next_hop, std::move(packet));
  if (tap_) {
    tap_(frame, now);
  }
  if (drop_frame(src)) {
    ++stats_.lost;
    return UnicastOutcome::Delivered;
  }
  ++stats_.deliveries;
  engine_.schedule(
      now + tx_delay(frame.size, cfg_),
      [this, frame, next_hop] { sinks_[next_hop.value]->receive(frame); },
      EventTag{static_cast<std::uint16_t>(10 + static_cast<int>(kind_of(*frame.payload))),
               src.value});
  return UnicastOutcome::Delivered;
}

}  // namespace zrpsim
