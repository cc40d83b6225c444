#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zrpsim/context.hpp"
#include "zrpsim/packets.hpp"
#include "zrpsim/rng.hpp"
#include "zrpsim/zone.hpp"

namespace zrpsim {

struct ZoneConfig {
  std::uint32_t alpha = 2;       // zone radius in hops
  double hello_interval = 1.0;   // seconds
  double neighbor_timeout = 3.0;
  double lsu_interval = 3.0;

  void validate() const;
  /// Link-state records not refreshed for this long are dropped.
  double lsu_hold() const noexcept { return 2.0 * lsu_interval; }
};

struct IarpStats {
  std::uint64_t hellos_sent = 0;
  std::uint64_t lsus_originated = 0;
  std::uint64_t lsus_relayed = 0;
  std::uint64_t zone_recomputes = 0;
};

/// Intrazone routing for one node: hello-based neighbor discovery plus
/// link-state updates flooded no further than the zone radius.
class IarpAgent {
 public:
  IarpAgent(NodeContext ctx, ZoneConfig cfg);

  /// Schedules the first hello and the first periodic LSU at random offsets
  /// inside their intervals.
  void start();

  /// Broadcasts a hello and reschedules itself with +/-10% jitter.
  void emit_hello();
  /// Broadcasts a fresh LSU (ttl = alpha) and restarts the periodic timer.
  LinkStateUpdate originate_lsu();
  /// Installs a newer LSU and relays it while hops remain. Stale, duplicate
  /// and out-of-scope (ttl 0) updates are ignored. Returns whether it was
  /// relayed.
  bool process_lsu(const LinkStateUpdate& lsu);

  void on_hello(NodeId from);
  /// Link-layer feedback: a unicast to `neighbor` found it out of range.
  void on_link_failure(NodeId neighbor);

  const ZoneTable& zone();
  std::optional<NodeId> intrazone_next_hop(NodeId dst);

  std::vector<NodeId> neighbor_ids() const;
  bool is_neighbor(NodeId node) const;
  const LinkStateDatabase& topology() const noexcept { return db_; }
  std::optional<std::uint32_t> stored_seq(NodeId origin) const;

  const ZoneConfig& config() const noexcept { return cfg_; }
  const IarpStats& stats() const noexcept { return stats_; }

 private:
  struct Neighbor {
    NodeId id;
    SimTime last_heard;
  };
  struct Record {
    bool known = false;
    bool installed = false;
    std::uint32_t seq = 0;
    SimTime heard_at = 0.0;
  };

  void neighbor_set_changed();
  void trigger_lsu();
  void schedule_periodic_lsu();
  void expire_neighbors();
  void purge_records();
  void arm_expiry();

  NodeContext ctx_;
  ZoneConfig cfg_;
  RngStream hello_rng_;
  RngStream lsu_rng_;

  std::vector<Neighbor> neighbors_;  // ascending by id
  std::vector<Record> records_;      // indexed by origin
  LinkStateDatabase db_;
  ZoneTable zone_;
  bool dirty_ = true;

  std::uint32_t lsu_seq_ = 0;
  Engine::Ticket periodic_lsu_;
  bool triggered_pending_ = false;
  bool expiry_armed_ = false;
  IarpStats stats_;
};

}  // namespace zrpsim
