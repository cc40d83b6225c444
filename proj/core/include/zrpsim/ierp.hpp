#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "zrpsim/brp.hpp"
#include "zrpsim/context.hpp"
#include "zrpsim/iarp.hpp"
#include "zrpsim/packets.hpp"

namespace zrpsim {

struct IerpConfig {
  double cache_ttl = 30.0;
  std::uint32_t retry_count = 2;
  double retry_timeout = 2.0;
  std::size_t buffer_limit = 64;

  void validate() const;
};

/// Newest discovered source route per destination, valid for `ttl` seconds.
class RouteCache {
 public:
  explicit RouteCache(double ttl) : ttl_(ttl) {}

  void install(NodeId dst, NodePath route, SimTime now);
  const NodePath* lookup(NodeId dst, SimTime now) const;
  bool purge(NodeId dst);
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  struct Entry {
    NodePath route;
    SimTime installed_at = 0.0;
  };
  double ttl_;
  std::map<NodeId, Entry> entries_;
};

/// Drops `a ... x ... x ... b` down to `a ... x ... b`. Every consecutive pair
/// of the result was consecutive in the input.
NodePath remove_loops(const NodePath& path);
bool has_repeats(const NodePath& path);

enum class SendOutcome { SentIntrazone, SentCached, QueryIssued, Dropped };
enum class ForwardOutcome { Progressed, Redirected, Delivered, Dropped };
enum class RetryOutcome { QueryIssued, Failed };
enum class DropReason { BufferOverflow, DiscoveryFailed, NoRoute, LinkBroken, HopLimit, Malformed };

const char* to_string(SendOutcome o) noexcept;
const char* to_string(ForwardOutcome o) noexcept;
const char* to_string(QueryAction a) noexcept;

/// Where data-packet fates are reported (the metrics side).
class DataSink {
 public:
  virtual ~DataSink() = default;
  virtual void on_delivered(const DataPacket& packet, SimTime at) = 0;
  virtual void on_dropped(const DataPacket& packet, DropReason reason) = 0;
};

struct IerpStats {
  std::uint64_t queries_issued = 0;
  std::uint64_t replies_sent = 0;
  std::uint64_t replies_accepted = 0;
  std::uint64_t replies_ignored = 0;
  std::uint64_t redirects = 0;
  std::uint64_t route_errors_sent = 0;
  std::uint64_t discoveries_failed = 0;
  std::uint64_t loops_cut = 0;
};

/// Reactive interzone routing for one node.
class IerpAgent final : public QueryHandler {
 public:
  static constexpr std::uint32_t kHopLimit = 64;

  IerpAgent(NodeContext ctx, IerpConfig ierp_cfg, double query_lifetime, IarpAgent& iarp,
            BrpAgent& brp, DataSink* sink);

  /// Entry point for locally generated data.
  SendOutcome send_data(DataPacket packet);

  QueryAction handle_query(RouteQuery query) override;
  void handle_reply(RouteReply reply);
  void on_route_error(RouteError error);
  /// Any data frame addressed to this node.
  void on_data(DataPacket packet);

  /// Moves a source-routed packet held by this node one hop on, bypassing a
  /// broken next hop through the zone when possible.
  ForwardOutcome forward_data(DataPacket packet);
  /// Called when the pending discovery for dst timed out.
  RetryOutcome retry_or_fail(NodeId dst);

  const RouteCache& cache() const noexcept { return cache_; }
  bool has_pending(NodeId dst) const { return pending_.contains(dst); }
  std::size_t buffered(NodeId dst) const;
  const IerpStats& stats() const noexcept { return stats_; }

 private:
  struct Pending {
    std::deque<DataPacket> buffer;
    SimTime issued_at = 0.0;
    std::uint32_t retries = 0;
    std::vector<QueryId> qids;
    Engine::Ticket timer;
  };
  struct Issued {
    NodeId dst;
    SimTime expires_at;
  };

  void issue_query(NodeId dst, Pending& pending);
  ForwardOutcome forward_intrazone(DataPacket packet);
  std::optional<SourceRoute> bypass(const SourceRoute& route);
  template <class P>
  ForwardOutcome advance(P packet, SourceRoute P::*route);
  void send_route_error(const DataPacket& packet);
  void deliver(const DataPacket& packet);
  void drop(const DataPacket& packet, DropReason reason);

  NodeContext ctx_;
  IerpConfig cfg_;
  double query_lifetime_;
  IarpAgent& iarp_;
  BrpAgent& brp_;
  DataSink* sink_;
  RouteCache cache_;
  std::map<NodeId, Pending> pending_;
  std::map<QueryId, Issued> issued_;
  std::uint32_t query_seq_ = 0;
  IerpStats stats_;
};

}  // namespace zrpsim
