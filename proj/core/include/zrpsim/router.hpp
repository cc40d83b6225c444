#pragma once

#include "zrpsim/brp.hpp"
#include "zrpsim/channel.hpp"
#include "zrpsim/context.hpp"
#include "zrpsim/iarp.hpp"
#include "zrpsim/ierp.hpp"

namespace zrpsim {

struct RouterConfig {
  ZoneConfig zone;
  BrpConfig brp;
  IerpConfig ierp;
};

/// One node's protocol stack: IARP, BRP and IERP behind a single frame sink.
class ZrpRouter final : public FrameSink {
 public:
  ZrpRouter(NodeContext ctx, const RouterConfig& cfg, DataSink* sink);
  ZrpRouter(const ZrpRouter&) = delete;
  ZrpRouter& operator=(const ZrpRouter&) = delete;

  void start() { iarp_.start(); }
  void receive(const Frame& frame) override;

  NodeId id() const noexcept { return ctx_.id; }
  IarpAgent& iarp() noexcept { return iarp_; }
  BrpAgent& brp() noexcept { return brp_; }
  IerpAgent& ierp() noexcept { return ierp_; }

 private:
  NodeContext ctx_;
  IarpAgent iarp_;
  BrpAgent brp_;
  IerpAgent ierp_;
};

}  // namespace zrpsim
