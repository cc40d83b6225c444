#include <benchmark/benchmark.h>

#include <random>

#include "zrpsim/engine.hpp"
#include "zrpsim/network.hpp"
#include "zrpsim/zone.hpp"

namespace {

using namespace zrpsim;

void BM_EngineScheduleRun(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Engine e;
    std::uint64_t sum = 0;
    for (int i = 0; i < n; ++i) {
      e.schedule((i * 7919) % n * 0.001, [&sum, i] { sum += static_cast<std::uint64_t>(i); });
    }
    e.run_until(1e9);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineScheduleRun)->Arg(1 << 10)->Arg(1 << 16);

void BM_ComputeZone(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto alpha = static_cast<std::uint32_t>(state.range(1));
  // Random geometric graph at roughly the density of 100 nodes on 800 x 800.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 800.0);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p = {u(rng), u(rng)};
  }
  LinkStateDatabase db;
  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<NodeId> nbrs;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a != b && distance(pts[a], pts[b]) <= 250.0) {
        nbrs.push_back(NodeId{b});
      }
    }
    db.set_links(NodeId{a}, nbrs);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_zone(NodeId{0}, db, alpha));
  }
}
BENCHMARK(BM_ComputeZone)->Args({100, 1})->Args({100, 2})->Args({100, 4});

void BM_Scenario(benchmark::State& state) {
  Scenario s;
  s.num_nodes = static_cast<std::uint32_t>(state.range(0));
  s.routing.zone.alpha = static_cast<std::uint32_t>(state.range(1));
  s.horizon = 30.0;
  s.traffic.stop = 25.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(s));
  }
}
BENCHMARK(BM_Scenario)->Args({50, 2})->Args({100, 1})->Args({100, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
