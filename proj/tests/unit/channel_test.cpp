#include <doctest.h>

#include <memory>
#include <vector>

#include "zrpsim/channel.hpp"

using namespace zrpsim;

namespace {

struct Inbox final : FrameSink {
  std::vector<std::pair<double, Frame>> got;
  Engine* engine = nullptr;
  void receive(const Frame& f) override { got.emplace_back(engine->now(), f); }
};

struct Bench {
  Engine engine;
  std::shared_ptr<StaticPositions> positions;
  std::unique_ptr<Channel> channel;
  std::vector<Inbox> inbox;

  explicit Bench(std::vector<Point> pts, RadioConfig cfg = {}) : inbox(pts.size()) {
    positions = std::make_shared<StaticPositions>(std::move(pts));
    channel = std::make_unique<Channel>(
        engine, std::make_shared<UnitDiskTopology>(positions, cfg.range), cfg, 1);
    for (std::uint32_t i = 0; i < inbox.size(); ++i) {
      inbox[i].engine = &engine;
      channel->attach(NodeId{i}, inbox[i]);
    }
  }
};

}  // namespace

TEST_CASE("tx_delay arithmetic") {
  RadioConfig cfg;
  CHECK(tx_delay(544, cfg) == doctest::Approx(0.003176));
  CHECK(tx_delay(0, cfg) == cfg.proc_delay);
  cfg.proc_delay = 0.0;
  CHECK(tx_delay(200, cfg) == doctest::Approx(2 * tx_delay(100, cfg)));
}

TEST_CASE("unit disk boundary") {
  Bench b({{0, 0}, {200, 0}, {451, 0}});
  CHECK(b.channel->in_range(NodeId{0}, NodeId{1}));
  CHECK(b.channel->in_range(NodeId{1}, NodeId{0}));
  CHECK_FALSE(b.channel->in_range(NodeId{1}, NodeId{2}));  // 251 m
  Bench alone({{0, 0}, {700, 700}});
  CHECK(alone.channel->neighbors(NodeId{0}).empty());
}

TEST_CASE("broadcast reaches every neighbor at the same instant") {
  Bench b({{0, 0}, {100, 0}, {0, 100}, {-100, 0}, {600, 600}});
  const auto to = b.channel->broadcast(NodeId{0}, Hello{});
  CHECK(to.size() == 3);
  b.engine.run_until(1.0);
  const double expect = tx_delay(kHelloBytes + 32, RadioConfig{});
  for (std::uint32_t i = 1; i <= 3; ++i) {
    REQUIRE(b.inbox[i].got.size() == 1);
    CHECK(b.inbox[i].got[0].first == doctest::Approx(expect));
    CHECK(b.inbox[i].got[0].second.size == kHelloBytes + 32);
  }
  CHECK(b.inbox[0].got.empty());
  CHECK(b.inbox[4].got.empty());
  CHECK(b.channel->stats().transmitted(PacketKind::Hello) == 1);
}

TEST_CASE("unicast outcome follows range") {
  Bench b({{0, 0}, {100, 0}, {300, 0}});
  DataPacket d;
  d.payload_size = 512;
  CHECK(b.channel->unicast(NodeId{0}, NodeId{1}, d) == UnicastOutcome::Delivered);
  CHECK(b.channel->unicast(NodeId{0}, NodeId{2}, d) == UnicastOutcome::LinkBroken);
  CHECK_THROWS_AS(b.channel->unicast(NodeId{0}, NodeId{9}, d), UnknownNode);
  b.engine.run_until(1.0);
  REQUIRE(b.inbox[1].got.size() == 1);
  CHECK(b.inbox[1].got[0].first == doctest::Approx(0.003176));
  CHECK(b.inbox[2].got.empty());
  CHECK(b.channel->stats().transmitted(PacketKind::Data) == 1);
  CHECK(b.channel->stats().link_broken == 1);
}

TEST_CASE("frames from one sender arrive in send order") {
  Bench b({{0, 0}, {100, 0}});
  for (std::uint32_t k = 0; k < 5; ++k) {
    DataPacket d;
    d.seq = k;
    d.payload_size = 100;
    b.channel->unicast(NodeId{0}, NodeId{1}, d);
  }
  b.engine.run_until(1.0);
  REQUIRE(b.inbox[1].got.size() == 5);
  for (std::uint32_t k = 0; k < 5; ++k) {
    CHECK(std::get<DataPacket>(*b.inbox[1].got[k].second.payload).seq == k);
  }
}

TEST_CASE("loss probability drops frames deterministically") {
  RadioConfig cfg;
  cfg.loss_prob = 0.5;
  auto count = [&] {
    Bench b({{0, 0}, {100, 0}}, cfg);
    for (int k = 0; k < 200; ++k) {
      b.channel->broadcast(NodeId{0}, Hello{});
    }
    b.engine.run_until(1.0);
    return b.inbox[1].got.size();
  };
  const auto n = count();
  CHECK(n == count());
  CHECK(n > 50);
  CHECK(n < 150);
}
