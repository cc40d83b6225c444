#pragma once

#include <cstdint>
#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "zrpsim/engine.hpp"
#include "zrpsim/ierp.hpp"
#include "zrpsim/packets.hpp"

namespace zrpsim {

struct CbrFlow {
  std::uint32_t id = 0;
  NodeId src;
  NodeId dst;
  std::uint32_t packet_size = 512;
  double interval = 0.25;
  SimTime start_at = 5.0;
  SimTime stop_at = 115.0;

  /// Throws std::invalid_argument. A finite horizon also bounds stop_at.
  void validate(SimTime horizon = std::numeric_limits<double>::infinity()) const;
  /// Packets go out at start_at + k*interval for every k with time < stop_at.
  std::uint32_t packet_count() const noexcept;
  SimTime send_time(std::uint32_t seq) const noexcept { return start_at + seq * interval; }
};

struct PacketRecord {
  SimTime sent_at = 0.0;
  std::optional<SimTime> received_at;
};

/// Per-flow send/receive bookkeeping. Also the DataSink the routers report to.
class FlowRecorder final : public DataSink {
 public:
  /// Returns the new record's seq (per-flow counter).
  std::uint32_t on_send(std::uint32_t flow, SimTime at);
  /// False for duplicates and unknown (flow, seq); those are counted instead.
  bool record_receive(std::uint32_t flow, std::uint32_t seq, SimTime at);

  void on_delivered(const DataPacket& packet, SimTime at) override;
  void on_dropped(const DataPacket& packet, DropReason reason) override;

  const std::vector<std::vector<PacketRecord>>& flows() const noexcept { return flows_; }
  std::uint64_t duplicates() const noexcept { return duplicates_; }
  std::uint64_t invalid() const noexcept { return invalid_; }
  std::uint64_t drops(DropReason reason) const noexcept {
    return drops_[static_cast<std::size_t>(reason)];
  }

 private:
  std::vector<std::vector<PacketRecord>> flows_;
  std::uint64_t duplicates_ = 0;
  std::uint64_t invalid_ = 0;
  std::array<std::uint64_t, 6> drops_{};
};

using DataSender = std::function<void(DataPacket)>;

/// Chains one event per packet; each send is recorded before the packet is
/// handed to `send`.
void schedule_flow(const CbrFlow& flow, Engine& engine, FlowRecorder& recorder, DataSender send);

struct MetricsReport {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::optional<double> delivery_ratio;
  double throughput_bps = 0.0;
  std::optional<double> avg_delay_s;
  std::optional<double> avg_jitter_s;
  std::optional<double> loss_pct;
  std::uint64_t control_packets = 0;
  bool empty = true;  // nothing sent: ratios undefined
  bool valid = true;  // false if receipts for unknown packets were seen
};

/// Pure function of the records. `packet_size` is in bytes.
MetricsReport finalize(const FlowRecorder& recorder, SimTime horizon, std::uint32_t packet_size,
                       std::uint64_t control_packets = 0);

}  // namespace zrpsim
