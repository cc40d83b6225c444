#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "zrpsim/context.hpp"
#include "zrpsim/iarp.hpp"
#include "zrpsim/packets.hpp"
#include "zrpsim/zone.hpp"

namespace zrpsim {

struct BrpConfig {
  double coverage_expiry = 10.0;  // seconds

  void validate() const;
};

/// Per-node bookkeeping of which queries were processed here and which nodes
/// each query is known to have covered. Entries live for `expiry` seconds
/// after they were first created.
class QueryCoverage {
 public:
  explicit QueryCoverage(double expiry) : expiry_(expiry) {}

  /// False if this node already processed qid (duplicate); otherwise marks it
  /// processed and returns true.
  bool should_relay(QueryId qid, SimTime now);
  /// Merges `nodes` into the covered set. An empty list is a no-op.
  void record_coverage(QueryId qid, std::span<const NodeId> nodes, SimTime now);

  std::vector<NodeId> covered(QueryId qid, SimTime now) const;
  bool is_covered(QueryId qid, NodeId node, SimTime now) const;
  bool processed(QueryId qid, SimTime now) const;

  void purge(SimTime now);
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  struct Entry {
    std::vector<NodeId> covered;  // ascending
    SimTime first_seen_at = 0.0;
    bool processed = false;
  };

  Entry* live(QueryId qid, SimTime now);
  const Entry* live(QueryId qid, SimTime now) const;
  Entry& fresh(QueryId qid, SimTime now);

  double expiry_;
  std::map<QueryId, Entry> entries_;
};

struct BordercastPlan {
  std::vector<NodeId> targets;                // ascending
  std::map<NodeId, NodeId> relay_next_hops;   // target -> first hop
  std::vector<NodePath> branches;             // self ... target, one per target

  bool empty() const noexcept { return targets.empty(); }
  std::size_t distinct_next_hops() const;
};

/// Targets are the peripheral nodes not yet covered for qid; each is reached
/// along its intrazone shortest path. Afterwards the whole zone (and self) is
/// recorded as covered.
BordercastPlan plan_bordercast(const ZoneTable& zone, QueryCoverage& coverage, QueryId qid,
                               SimTime now);

enum class QueryAction { Replied, Forwarded, Terminated };

/// Receives queries that reached their bordercast target.
class QueryHandler {
 public:
  virtual ~QueryHandler() = default;
  virtual QueryAction handle_query(RouteQuery query) = 0;
};

struct BrpStats {
  std::uint64_t bordercasts = 0;  // transmissions planned at this node
  std::uint64_t relays = 0;       // transmissions relaying someone else's tree
  std::uint64_t empty_plans = 0;
};

/// Bordercast delivery service for one node.
///
/// One transmission carries the whole tree: every branch lists the intrazone
/// path to one target, and each tree node forwards the branches that continue
/// past it in a single relay transmission.
class BrpAgent {
 public:
  BrpAgent(NodeContext ctx, BrpConfig cfg, IarpAgent& iarp);

  void set_query_handler(QueryHandler* handler) noexcept { handler_ = handler; }

  /// Plans a bordercast for `query` and transmits it. Returns the number of
  /// transmissions issued here (0 for an empty plan).
  std::size_t forward_query(RouteQuery query);

  void on_bordercast(const BordercastQuery& frame, NodeId from);

  QueryCoverage& coverage() noexcept { return coverage_; }
  const BrpStats& stats() const noexcept { return stats_; }

 private:
  NodeContext ctx_;
  BrpConfig cfg_;
  IarpAgent& iarp_;
  QueryHandler* handler_ = nullptr;
  QueryCoverage coverage_;
  BrpStats stats_;
  SimTime last_purge_ = 0.0;
};

}  // namespace zrpsim
