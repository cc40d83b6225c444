#include "zrpsim/router.hpp"

#include <variant>

namespace zrpsim {

ZrpRouter::ZrpRouter(NodeContext ctx, const RouterConfig& cfg, DataSink* sink)
    : ctx_(ctx),
      iarp_(ctx, cfg.zone),
      brp_(ctx, cfg.brp, iarp_),
      ierp_(ctx, cfg.ierp, cfg.brp.coverage_expiry, iarp_, brp_, sink) {
  brp_.set_query_handler(&ierp_);
}

void ZrpRouter::receive(const Frame& frame) {
  const RoutingPacket& packet = *frame.payload;
  if (frame.dst != kBroadcast && frame.dst != ctx_.id) {
    return;
  }
  switch (kind_of(packet)) {
    case PacketKind::Hello:
      iarp_.on_hello(frame.src);
      break;
    case PacketKind::Lsu:
      iarp_.process_lsu(std::get<LinkStateUpdate>(packet));
      break;
    case PacketKind::Query:
      brp_.on_bordercast(std::get<BordercastQuery>(packet), frame.src);
      break;
    case PacketKind::Reply:
      ierp_.handle_reply(std::get<RouteReply>(packet));
      break;
    case PacketKind::Error:
      ierp_.on_route_error(std::get<RouteError>(packet));
      break;
    case PacketKind::Data:
      ierp_.on_data(std::get<DataPacket>(packet));
      break;
  }
}

}  // namespace zrpsim
