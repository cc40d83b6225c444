#include "zrpsim/types.hpp"

#include <ostream>

namespace zrpsim {

std::ostream& operator<<(std::ostream& os, NodeId id) {
  if (id == kBroadcast) {
    return os << "*";
  }
  return os << id.value;
}

std::string to_string(NodeId id) {
  if (id == kBroadcast) {
    return "*";
  }
  return std::to_string(id.value);
}

}  // namespace zrpsim
