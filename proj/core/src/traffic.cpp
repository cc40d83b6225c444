#include "zrpsim/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace zrpsim {
namespace {

constexpr std::uint16_t kTagTraffic = 6;

void schedule_packet(const CbrFlow& flow, std::uint32_t seq, Engine& engine,
                     FlowRecorder& recorder, std::shared_ptr<DataSender> send) {
  engine.schedule(
      flow.send_time(seq),
      [flow, seq, &engine, &recorder, send] {
        DataPacket packet;
        packet.flow = flow.id;
        packet.seq = recorder.on_send(flow.id, engine.now());
        packet.src = flow.src;
        packet.dst = flow.dst;
        packet.sent_at = engine.now();
        packet.payload_size = flow.packet_size;
        if (seq + 1 < flow.packet_count()) {
          schedule_packet(flow, seq + 1, engine, recorder, send);
        }
        (*send)(std::move(packet));
      },
      EventTag{kTagTraffic, flow.src.value});
}

}  // namespace

void CbrFlow::validate(SimTime horizon) const {
  if (!(interval > 0.0)) {
    throw std::invalid_argument("flow interval must be > 0");
  }
  if (!(start_at >= 0.0) || !(start_at < stop_at)) {
    throw std::invalid_argument("flow needs 0 <= start_at < stop_at");
  }
  if (stop_at > horizon) {
    throw std::invalid_argument("flow stop_at exceeds the run horizon");
  }
  if (packet_size == 0) {
    throw std::invalid_argument("flow packet_size must be > 0");
  }
  if (src == dst) {
    throw std::invalid_argument("flow src and dst must differ");
  }
}

std::uint32_t CbrFlow::packet_count() const noexcept {
  if (!(interval > 0.0) || !(start_at < stop_at)) {
    return 0;
  }
  auto n = static_cast<std::uint32_t>(std::ceil((stop_at - start_at) / interval));
  // ceil can be off by one when the ratio is not exact in binary.
  while (n > 0 && send_time(n - 1) >= stop_at) {
    --n;
  }
  while (send_time(n) < stop_at) {
    ++n;
  }
  return n;
}

std::uint32_t FlowRecorder::on_send(std::uint32_t flow, SimTime at) {
  if (flow >= flows_.size()) {
    flows_.resize(flow + 1);
  }
  flows_[flow].push_back(PacketRecord{at, std::nullopt});
  return static_cast<std::uint32_t>(flows_[flow].size() - 1);
}

bool FlowRecorder::record_receive(std::uint32_t flow, std::uint32_t seq, SimTime at) {
  if (flow >= flows_.size() || seq >= flows_[flow].size() || at < flows_[flow][seq].sent_at) {
    ++invalid_;
    return false;
  }
  PacketRecord& rec = flows_[flow][seq];
  if (rec.received_at) {
    ++duplicates_;
    return false;
  }
  rec.received_at = at;
  return true;
}

void FlowRecorder::on_delivered(const DataPacket& packet, SimTime at) {
  record_receive(packet.flow, packet.seq, at);
}

void FlowRecorder::on_dropped(const DataPacket&, DropReason reason) {
  ++drops_[static_cast<std::size_t>(reason)];
}

void schedule_flow(const CbrFlow& flow, Engine& engine, FlowRecorder& recorder, DataSender send) {
  if (flow.packet_count() == 0) {
    return;
  }
  schedule_packet(flow, 0, engine, recorder, std::make_shared<DataSender>(std::move(send)));
}

MetricsReport finalize(const FlowRecorder& recorder, SimTime horizon, std::uint32_t packet_size,
                       std::uint64_t control_packets) {
  MetricsReport r;
  r.control_packets = control_packets;
  r.valid = recorder.invalid() == 0;

  double delay_sum = 0.0;
  double jitter_sum = 0.0;
  std::uint64_t jitter_flows = 0;
  for (const auto& records : recorder.flows()) {
    std::optional<double> prev;
    double var_sum = 0.0;
    std::uint64_t var_n = 0;
    for (const PacketRecord& rec : records) {
      ++r.sent;
      if (!rec.received_at) {
        continue;
      }
      ++r.received;
      const double delay = *rec.received_at - rec.sent_at;
      delay_sum += delay;
      if (prev) {
        var_sum += std::abs(delay - *prev);
        ++var_n;
      }
      prev = delay;
    }
    if (var_n > 0) {
      jitter_sum += var_sum / static_cast<double>(var_n);
      ++jitter_flows;
    } else if (prev) {
      ++jitter_flows;  // a single delivery varies by nothing
    }
  }

  r.empty = r.sent == 0;
  if (horizon > 0.0) {
    r.throughput_bps = static_cast<double>(r.received) * packet_size * 8.0 / horizon;
  }
  if (!r.empty) {
    r.delivery_ratio = static_cast<double>(r.received) / static_cast<double>(r.sent);
    r.loss_pct = 100.0 - 100.0 * *r.delivery_ratio;
  }
  if (r.received > 0) {
    r.avg_delay_s = delay_sum / static_cast<double>(r.received);
  }
  if (jitter_flows > 0) {
    r.avg_jitter_s = jitter_sum / static_cast<double>(jitter_flows);
  }
  return r;
}

}  // namespace zrpsim
