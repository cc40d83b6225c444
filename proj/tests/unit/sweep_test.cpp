#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "zrpsim/network.hpp"
#include "zrpsim/results.hpp"
#include "zrpsim/sweep.hpp"

using namespace zrpsim;

namespace {

Scenario small_base() {
  Scenario s;
  s.horizon = 20.0;
  s.traffic.start = 5.0;
  s.traffic.stop = 15.0;
  s.traffic.flows = 4;
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rows come back complete and in cell order") {
  SweepSpec spec;
  spec.node_counts = {25, 50};
  spec.alphas = {1, 2};
  spec.seeds_per_cell = 3;
  const auto rows = sweep(spec, small_base());
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].num_nodes == 25);
  CHECK(rows[0].alpha == 1);
  CHECK(rows[0].seed == 1);
  CHECK(rows[2].seed == 3);
  CHECK(rows[3].alpha == 2);
  CHECK(rows[11].num_nodes == 50);
}

TEST_CASE("single cell equals a direct run") {
  SweepSpec spec;
  spec.node_counts = {30};
  spec.alphas = {2};
  spec.seeds_per_cell = 1;
  Scenario base = small_base();
  base.seed = 7;
  const auto rows = sweep(spec, base);
  REQUIRE(rows.size() == 1);
  Scenario s = base;
  s.num_nodes = 30;
  s.routing.zone.alpha = 2;
  CHECK(csv_row(rows[0]) == csv_row(ResultRow{30, 2, 7, run_scenario(s)}));
}

TEST_CASE("parallel and serial sweeps produce the same CSV") {
  SweepSpec spec;
  spec.node_counts = {20, 40};
  spec.alphas = {1, 3};
  spec.seeds_per_cell = 2;
  CHECK(to_csv(sweep(spec, small_base(), 1)) == to_csv(sweep(spec, small_base(), 3)));
}

TEST_CASE("invalid sweep specs are rejected") {
  SweepSpec spec;
  spec.alphas = {};
  CHECK_THROWS(sweep(spec, small_base()));
  spec.alphas = {0};
  CHECK_THROWS(sweep(spec, small_base()));
}

TEST_CASE("a failing cell reports its identity") {
  SweepSpec spec;
  spec.node_counts = {3};
  spec.alphas = {1};
  spec.seeds_per_cell = 1;
  Scenario base = small_base();
  base.traffic.flows = 6;
  base.num_nodes = 3;
  spec.node_counts = {2};  // 2 nodes cannot host 6 flows
  try {
    sweep(spec, base);
    FAIL("expected SweepError");
  } catch (const SweepError& e) {
    CHECK(e.cell().num_nodes == 2);
    CHECK(std::string(e.what()).find("num_nodes=2") != std::string::npos);
  }
}

TEST_CASE("CSV header, blanks and round trip") {
  CHECK(csv_header() ==
        "num_nodes,alpha,seed,sent,received,delivery_ratio,throughput_bps,avg_delay_s,"
        "avg_jitter_s,loss_pct,control_packets");
  ResultRow empty{10, 1, 5, MetricsReport{}};
  CHECK(csv_row(empty) == "10,1,5,0,0,,0,,,,0");

  SweepSpec spec;
  spec.node_counts = {20};
  spec.alphas = {1, 2};
  spec.seeds_per_cell = 2;
  const auto rows = sweep(spec, small_base());
  const std::string csv = to_csv(rows);
  CHECK(to_csv(parse_csv(csv)) == csv);
  CHECK_THROWS(parse_csv("a,b\n1,2\n"));
  CHECK_THROWS(parse_csv(csv_header() + "\n1,2,3\n"));
}

TEST_CASE("same scenario twice gives byte-identical rows") {
  Scenario s = small_base();
  s.num_nodes = 40;
  s.seed = 11;
  CHECK(csv_row(ResultRow{40, 2, 11, run_scenario(s)}) ==
        csv_row(ResultRow{40, 2, 11, run_scenario(s)}));
}

TEST_CASE("two adjacent static nodes deliver everything") {
  Scenario s;
  s.num_nodes = 2;
  s.terrain = Terrain{100.0, 100.0};
  s.mobility.enabled = false;
  s.routing.zone.alpha = 1;
  s.traffic.flows = 1;
  const MetricsReport r = run_scenario(s);
  CHECK(r.sent == 440);
  CHECK(*r.delivery_ratio == 1.0);
}

TEST_CASE("radius at least the diameter sends no queries") {
  // 10 static nodes packed so every pair is within three hops.
  Scenario s;
  s.num_nodes = 10;
  s.terrain = Terrain{600.0, 150.0};
  s.radio.range = 220.0;
  s.mobility.enabled = false;
  s.routing.zone.alpha = 4;
  s.traffic.flows = 20;
  Network net(s);
  net.run();
  CHECK(net.channel().stats().transmitted(PacketKind::Query) == 0);
  CHECK(*net.report().delivery_ratio == 1.0);
}

TEST_CASE("plot data shape and aggregation") {
  std::vector<ResultRow> rows;
  for (std::uint32_t n : {25u, 50u, 75u, 100u}) {
    for (std::uint32_t a = 1; a <= 4; ++a) {
      MetricsReport m;
      m.sent = 10;
      m.received = 5 + a;
      m.delivery_ratio = m.received / 10.0;
      m.avg_delay_s = 0.01 * n;
      m.avg_jitter_s = 0.001;
      m.loss_pct = 100.0 - 10.0 * m.received;
      rows.push_back(ResultRow{n, a, 1, m});
    }
  }
  const auto& fig2 = figures().at(0);
  const auto pts = aggregate(rows, fig2);
  REQUIRE(pts.size() == 16);
  for (const auto& p : pts) {
    CHECK(p.n == 1);
    CHECK(p.std == 0.0);
  }
  const std::string text = plotdata_text(rows, fig2);
  CHECK(text.rfind("# figure: fig2", 0) == 0);
  CHECK(text.find("# units: ratio") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "zrpsim_plot_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_plotdata(rows, dir);
  CHECK(paths.size() == 4);
  CHECK(slurp(dir / "fig5.tsv").find("loss_pct") != std::string::npos);
  std::filesystem::remove_all(dir);
  CHECK_THROWS(write_plotdata({}, dir));
}

TEST_CASE("plot means match an independent recomputation") {
  SweepSpec spec;
  spec.node_counts = {20, 30};
  spec.alphas = {1, 2};
  spec.seeds_per_cell = 3;
  const auto rows = parse_csv(to_csv(sweep(spec, small_base())));
  for (const FigureSpec& fig : figures()) {
    for (const SeriesPoint& p : aggregate(rows, fig)) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const ResultRow& r : rows) {
        if (r.alpha == p.alpha && r.num_nodes == p.num_nodes && fig.value(r.metrics)) {
          sum += *fig.value(r.metrics);
          ++n;
        }
      }
      CHECK(p.n == n);
      CHECK(format_double(p.mean) == format_double(sum / static_cast<double>(n)));
    }
  }
}
