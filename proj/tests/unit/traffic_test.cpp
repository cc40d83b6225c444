#include <doctest.h>

#include "zrpsim/traffic.hpp"

using namespace zrpsim;

namespace {

FlowRecorder with_delays(const std::vector<std::vector<double>>& flows) {
  FlowRecorder rec;
  for (std::uint32_t f = 0; f < flows.size(); ++f) {
    for (double d : flows[f]) {
      const auto seq = rec.on_send(f, 1.0);
      if (d >= 0.0) {
        rec.record_receive(f, seq, 1.0 + d);
      }
    }
  }
  return rec;
}

}  // namespace

TEST_CASE("packet counts") {
  CbrFlow f;
  f.src = NodeId{0};
  f.dst = NodeId{1};
  CHECK(f.packet_count() == 440);
  f.stop_at = f.start_at + f.interval;
  CHECK(f.packet_count() == 1);
  f.interval = 0.1;
  f.start_at = 0.0;
  f.stop_at = 0.3;
  CHECK(f.packet_count() == 3);
}

TEST_CASE("flow validation") {
  CbrFlow f;
  f.src = NodeId{0};
  f.dst = NodeId{1};
  CHECK_NOTHROW(f.validate(120.0));
  CHECK_THROWS(f.validate(100.0));
  f.interval = 0.0;
  CHECK_THROWS(f.validate());
  f.interval = 0.25;
  f.dst = NodeId{0};
  CHECK_THROWS(f.validate());
}

TEST_CASE("scheduled flows send on the grid with their own counters") {
  Engine e;
  FlowRecorder rec;
  std::vector<DataPacket> out;
  CbrFlow a;
  a.id = 0;
  a.src = NodeId{0};
  a.dst = NodeId{1};
  CbrFlow b = a;
  b.id = 1;
  b.dst = NodeId{2};
  schedule_flow(a, e, rec, [&](DataPacket p) { out.push_back(p); });
  schedule_flow(b, e, rec, [&](DataPacket p) { out.push_back(p); });
  e.run_until(120.0);
  REQUIRE(out.size() == 880);
  CHECK(rec.flows()[0].size() == 440);
  CHECK(rec.flows()[1].size() == 440);
  CHECK(out[0].sent_at == 5.0);
  CHECK(out.back().sent_at == 114.75);
  CHECK(out.back().seq == 439);
  CHECK(out[0].payload_size == 512);
}

TEST_CASE("metric arithmetic") {
  FlowRecorder rec;
  for (int k = 0; k < 10; ++k) {
    const auto seq = rec.on_send(0, k);
    if (k < 8) {
      rec.record_receive(0, seq, k + 0.01);
    }
  }
  const MetricsReport r = finalize(rec, 120.0, 512, 7);
  CHECK(r.sent == 10);
  CHECK(r.received == 8);
  CHECK(*r.delivery_ratio == doctest::Approx(0.8));
  CHECK(*r.loss_pct == doctest::Approx(20.0));
  CHECK(r.throughput_bps == doctest::Approx(8 * 512 * 8 / 120.0));
  CHECK(r.control_packets == 7);
  CHECK(r.valid);
  CHECK_FALSE(r.empty);
}

TEST_CASE("delay and jitter") {
  const MetricsReport r = finalize(with_delays({{0.010, 0.020, 0.030}}), 10.0, 512);
  CHECK(*r.avg_delay_s == doctest::Approx(0.020));
  CHECK(*r.avg_jitter_s == doctest::Approx(0.010));
  const MetricsReport flat = finalize(with_delays({{0.5, 0.5, 0.5}, {0.2, -1, 0.2}}), 10.0, 512);
  CHECK(*flat.avg_jitter_s == 0.0);
}

TEST_CASE("jitter skips lost packets and averages over flows") {
  // flow 0: delays 1, lost, 3 -> |3-1| = 2; flow 1: 1, 2 -> 1. Mean 1.5.
  const MetricsReport r = finalize(with_delays({{1, -1, 3}, {1, 2}}), 10.0, 512);
  CHECK(*r.avg_jitter_s == doctest::Approx(1.5));
}

TEST_CASE("nothing sent leaves ratios undefined") {
  FlowRecorder rec;
  const MetricsReport r = finalize(rec, 120.0, 512);
  CHECK(r.empty);
  CHECK_FALSE(r.delivery_ratio.has_value());
  CHECK_FALSE(r.loss_pct.has_value());
  CHECK_FALSE(r.avg_delay_s.has_value());
  CHECK(r.throughput_bps == 0.0);
}

TEST_CASE("duplicates and unknown receipts are counted, not recorded") {
  FlowRecorder rec;
  rec.on_send(0, 1.0);
  CHECK(rec.record_receive(0, 0, 1.5));
  CHECK_FALSE(rec.record_receive(0, 0, 1.6));
  CHECK(rec.duplicates() == 1);
  CHECK_FALSE(rec.record_receive(0, 5, 2.0));
  CHECK_FALSE(rec.record_receive(3, 0, 2.0));
  CHECK(rec.invalid() == 2);
  CHECK(*rec.flows()[0][0].received_at == 1.5);
  CHECK_FALSE(finalize(rec, 10.0, 512).valid);
}

TEST_CASE("loss and delivery ratio add up to 100 exactly") {
  for (std::uint64_t sent = 1; sent <= 500; ++sent) {
    for (std::uint64_t got = 0; got <= sent; got += 1 + sent / 37) {
      FlowRecorder rec;
      for (std::uint64_t k = 0; k < sent; ++k) {
        const auto seq = rec.on_send(0, 0.0);
        if (k < got) {
          rec.record_receive(0, seq, 0.1);
        }
      }
      const MetricsReport r = finalize(rec, 1.0, 1);
      CHECK(*r.loss_pct + 100.0 * *r.delivery_ratio == 100.0);
    }
  }
}

TEST_CASE("finalize is pure") {
  const FlowRecorder rec = with_delays({{0.1, 0.3, -1, 0.2}, {0.05}});
  const MetricsReport a = finalize(rec, 50.0, 512);
  const MetricsReport b = finalize(rec, 50.0, 512);
  CHECK(*a.avg_delay_s == *b.avg_delay_s);
  CHECK(*a.avg_jitter_s == *b.avg_jitter_s);
  CHECK(a.throughput_bps == b.throughput_bps);
}
