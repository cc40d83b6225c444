#pragma once

#include <cstdint>
#include <random>

#include "zrpsim/types.hpp"

namespace zrpsim {

/// What a random stream is used for. Each (purpose, node) pair gets its own
/// stream so that adding nodes or draws elsewhere never shifts another
/// stream's sequence.
enum class StreamPurpose : std::uint32_t {
  Mobility = 1,
  Hello = 2,
  Lsu = 3,
  Traffic = 4,
  Loss = 5,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// seed' = splitmix64(master ^ splitmix64((purpose << 32) | node)).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, StreamPurpose purpose,
                                 NodeId node) noexcept;

/// Seeded pseudo-random stream. Draws are produced from mt19937_64 (whose
/// output sequence is fixed by the standard) with hand-written conversions,
/// so sequences are identical across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, StreamPurpose purpose, NodeId node);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi);

  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace zrpsim
