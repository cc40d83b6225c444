#include "zrpsim/packets.hpp"

namespace zrpsim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint32_t entries(std::size_t n) {
  return static_cast<std::uint32_t>(n) * kBytesPerNodeEntry;
}

}  // namespace

PacketKind kind_of(const RoutingPacket& packet) noexcept {
  return static_cast<PacketKind>(packet.index());
}

const char* to_string(PacketKind kind) noexcept {
  switch (kind) {
    case PacketKind::Hello: return "hello";
    case PacketKind::Lsu: return "lsu";
    case PacketKind::Query: return "query";
    case PacketKind::Reply: return "reply";
    case PacketKind::Error: return "error";
    case PacketKind::Data: return "data";
  }
  return "?";
}

std::uint32_t payload_bytes(const RoutingPacket& packet) noexcept {
  return std::visit(
      Overloaded{
          [](const Hello&) { return kHelloBytes; },
          [](const LinkStateUpdate& l) { return kLsuBaseBytes + entries(l.neighbor_list.size()); },
          [](const BordercastQuery& q) {
            return kQueryBaseBytes + entries(q.query.accumulated_route.size());
          },
          [](const RouteReply& r) { return kQueryBaseBytes + entries(r.full_route.size()); },
          [](const RouteError&) { return kRouteErrorBytes; },
          [](const DataPacket& d) { return d.payload_size; },
      },
      packet);
}

}  // namespace zrpsim
