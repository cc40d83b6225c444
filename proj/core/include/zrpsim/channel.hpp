#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zrpsim/engine.hpp"
#include "zrpsim/packets.hpp"
#include "zrpsim/rng.hpp"
#include "zrpsim/topology.hpp"

namespace zrpsim {

struct RadioConfig {
  double range = 250.0;          // meters
  double data_rate = 2'000'000;  // bits per second
  std::uint32_t frame_overhead = 32;
  double proc_delay = 0.001;  // seconds per hop
  double loss_prob = 0.0;

  void validate() const;
};

/// size*8/data_rate + proc_delay.
double tx_delay(std::uint32_t size_bytes, const RadioConfig& cfg) noexcept;

struct Frame {
  NodeId src;
  NodeId dst;  // kBroadcast for broadcasts
  std::shared_ptr<const RoutingPacket> payload;
  std::uint32_t size = 0;
};

class FrameSink {
 public:
  virtual ~FrameSink() = default;
  virtual void receive(const Frame& frame) = 0;
};

enum class UnicastOutcome { Delivered, LinkBroken };

class UnknownNode : public std::out_of_range {
 public:
  explicit UnknownNode(NodeId node);
};

struct ChannelStats {
  std::array<std::uint64_t, kPacketKinds> transmissions{};
  std::uint64_t deliveries = 0;
  std::uint64_t lost = 0;
  std::uint64_t link_broken = 0;

  std::uint64_t transmitted(PacketKind kind) const {
    return transmissions[static_cast<std::size_t>(kind)];
  }
};

/// Idealized shared radio: no contention, every transmission is delivered to
/// each in-range receiver exactly tx_delay(size) after it starts. Receivers
/// are fixed by the connectivity snapshot at send time.
class Channel {
 public:
  using Tap = std::function<void(const Frame&, SimTime sent_at)>;

  Channel(Engine& engine, std::shared_ptr<const Topology> topology, RadioConfig cfg,
          std::uint64_t seed);

  void attach(NodeId node, FrameSink& sink);
  bool attached(NodeId node) const noexcept;

  /// Returns the receivers of the frame in ascending order.
  std::vector<NodeId> broadcast(NodeId src, RoutingPacket packet);

  /// LinkBroken when next_hop is out of range at send time; the frame is then
  /// not transmitted. Throws UnknownNode for unattached next hops.
  UnicastOutcome unicast(NodeId src, NodeId next_hop, RoutingPacket packet);

  bool in_range(NodeId a, NodeId b) const;
  std::vector<NodeId> neighbors(NodeId node) const;

  const RadioConfig& config() const noexcept { return cfg_; }
  const ChannelStats& stats() const noexcept { return stats_; }
  const Topology& topology() const noexcept { return *topology_; }

  /// Observes every transmission (after the receiver set is fixed).
  void set_tap(Tap tap) { tap_ = std::move(tap); }

 private:
  bool drop_frame(NodeId src);
  Frame make_frame(NodeId src, NodeId dst, RoutingPacket&& packet);

  Engine& engine_;
  std::shared_ptr<const Topology> topology_;
  RadioConfig cfg_;
  std::uint64_t seed_;
  std::vector<FrameSink*> sinks_;
  std::vector<std::optional<RngStream>> loss_rng_;
  std::vector<NodeId> scratch_;
  ChannelStats stats_;
  Tap tap_;
};

}  // namespace zrpsim
