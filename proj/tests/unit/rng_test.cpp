#include <doctest.h>

#include <set>

#include "zrpsim/rng.hpp"

using namespace zrpsim;

TEST_CASE("streams are reproducible and independent") {
  RngStream a(42, StreamPurpose::Mobility, NodeId{3});
  RngStream b(42, StreamPurpose::Mobility, NodeId{3});
  RngStream c(42, StreamPurpose::Mobility, NodeId{4});
  RngStream d(42, StreamPurpose::Hello, NodeId{3});
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  CHECK(x != d.next_u64());
}

TEST_CASE("stream seeds differ across purposes, nodes and masters") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t m : {1ull, 2ull}) {
    for (auto p : {StreamPurpose::Mobility, StreamPurpose::Hello, StreamPurpose::Lsu,
                   StreamPurpose::Traffic, StreamPurpose::Loss}) {
      for (std::uint32_t n = 0; n < 20; ++n) {
        seeds.insert(derive_stream_seed(m, p, NodeId{n}));
      }
    }
  }
  CHECK(seeds.size() == 2 * 5 * 20);
}

TEST_CASE("uniform draws stay in range") {
  RngStream r(7, StreamPurpose::Traffic, NodeId{0});
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform01();
    CHECK((u >= 0.0 && u < 1.0));
    const double v = r.uniform(-2.0, 3.0);
    CHECK((v >= -2.0 && v < 3.0));
    CHECK(r.below(7) < 7);
  }
  CHECK(r.uniform(1.5, 1.5) == 1.5);
  CHECK_THROWS(r.below(0));
}

TEST_CASE("below covers every value") {
  RngStream r(9, StreamPurpose::Traffic, NodeId{1});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    seen.insert(r.below(5));
  }
  CHECK(seen.size() == 5);
}
