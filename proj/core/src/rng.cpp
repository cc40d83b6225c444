#include "zrpsim/rng.hpp"

#include <limits>
#include <stdexcept>

namespace zrpsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, StreamPurpose purpose,
                                 NodeId node) noexcept {
  const std::uint64_t stream_id =
      (static_cast<std::uint64_t>(purpose) << 32) | static_cast<std::uint64_t>(node.value);
  return splitmix64(master_seed ^ splitmix64(stream_id));
}

RngStream::RngStream(std::uint64_t master_seed, StreamPurpose purpose, NodeId node)
    : engine_(derive_stream_seed(master_seed, purpose, node)) {}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (lo == hi) {
    return lo;
  }
  return lo + (hi - lo) * uniform01();
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("RngStream::below requires n > 0");
  }
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return x % n;
}

}  // namespace zrpsim
