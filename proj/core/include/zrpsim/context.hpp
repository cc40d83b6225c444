#pragma once

#include <cstdint>

#include "zrpsim/channel.hpp"
#include "zrpsim/engine.hpp"
#include "zrpsim/types.hpp"

namespace zrpsim {

/// What every per-node protocol agent needs from its surroundings.
struct NodeContext {
  NodeId id;
  Engine* engine = nullptr;
  Channel* channel = nullptr;
  std::uint64_t seed = 0;

  SimTime now() const { return engine->now(); }
};

}  // namespace zrpsim
