#include "zrpsim/brp.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>

namespace zrpsim {

void BrpConfig::validate() const {
  if (!(coverage_expiry > 0.0)) {
    throw std::invalid_argument("brp.coverage_expiry must be > 0");
  }
}

QueryCoverage::Entry* QueryCoverage::live(QueryId qid, SimTime now) {
  auto it = entries_.find(qid);
  if (it == entries_.end()) {
    return nullptr;
  }
  if (it->second.first_seen_at + expiry_ <= now) {
    entries_.erase(it);
    return nullptr;
  }
  return &it->second;
}

const QueryCoverage::Entry* QueryCoverage::live(QueryId qid, SimTime now) const {
  auto it = entries_.find(qid);
  if (it == entries_.end() || it->second.first_seen_at + expiry_ <= now) {
    return nullptr;
  }
  return &it->second;
}

QueryCoverage::Entry& QueryCoverage::fresh(QueryId qid, SimTime now) {
  if (Entry* e = live(qid, now)) {
    return *e;
  }
  Entry& e = entries_[qid];
  e = Entry{};
  e.first_seen_at = now;
  return e;
}

bool QueryCoverage::should_relay(QueryId qid, SimTime now) {
  Entry& e = fresh(qid, now);
  if (e.processed) {
    return false;
  }
  e.processed = true;
  return true;
}

void QueryCoverage::record_coverage(QueryId qid, std::span<const NodeId> nodes, SimTime now) {
  if (nodes.empty()) {
    return;
  }
  Entry& e = fresh(qid, now);
  std::vector<NodeId> add(nodes.begin(), nodes.end());
  std::sort(add.begin(), add.end());
  std::vector<NodeId> merged;
  merged.reserve(e.covered.size() + add.size());
  std::set_union(e.covered.begin(), e.covered.end(), add.begin(), add.end(),
                 std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  e.covered = std::move(merged);
}

std::vector<NodeId> QueryCoverage::covered(QueryId qid, SimTime now) const {
  const Entry* e = live(qid, now);
  return e ? e->covered : std::vector<NodeId>{};
}

bool QueryCoverage::is_covered(QueryId qid, NodeId node, SimTime now) const {
  const Entry* e = live(qid, now);
  return e && std::binary_search(e->covered.begin(), e->covered.end(), node);
}

bool QueryCoverage::processed(QueryId qid, SimTime now) const {
  const Entry* e = live(qid, now);
  return e && e->processed;
}

void QueryCoverage::purge(SimTime now) {
  std::erase_if(entries_, [&](const auto& kv) { return kv.second.first_seen_at + expiry_ <= now; });
}

std::size_t BordercastPlan::distinct_next_hops() const {
  std::set<NodeId> hops;
  for (const auto& [target, hop] : relay_next_hops) {
    hops.insert(hop);
  }
  return hops.size();
}

BordercastPlan plan_bordercast(const ZoneTable& zone, QueryCoverage& coverage, QueryId qid,
                               SimTime now) {
  BordercastPlan plan;
  for (NodeId p : zone.peripheral()) {
    if (coverage.is_covered(qid, p, now)) {
      continue;
    }
    plan.targets.push_back(p);
    plan.relay_next_hops.emplace(p, *zone.next_hop(p));
    plan.branches.push_back(zone.path_to(p));
  }
  std::vector<NodeId> self_zone = zone.members();
  self_zone.push_back(zone.self());
  coverage.record_coverage(qid, self_zone, now);
  return plan;
}

BrpAgent::BrpAgent(NodeContext ctx, BrpConfig cfg, IarpAgent& iarp)
    : ctx_(ctx), cfg_(cfg), iarp_(iarp), coverage_(cfg.coverage_expiry) {
  cfg_.validate();
}

std::size_t BrpAgent::forward_query(RouteQuery query) {
  const SimTime now = ctx_.now();
  if (now - last_purge_ >= cfg_.coverage_expiry) {
    coverage_.purge(now);
    last_purge_ = now;
  }
  BordercastPlan plan = plan_bordercast(iarp_.zone(), coverage_, query.qid, now);
  if (plan.empty()) {
    ++stats_.empty_plans;
    return 0;
  }
  query.covered_summary = coverage_.covered(query.qid, now);
  BordercastQuery frame{std::move(query), ctx_.id, std::move(plan.branches)};
  ctx_.channel->broadcast(ctx_.id, std::move(frame));
  ++stats_.bordercasts;
  return 1;
}

void BrpAgent::on_bordercast(const BordercastQuery& frame, NodeId from) {
  const NodeId self = ctx_.id;
  bool is_target = false;
  std::vector<NodePath> onward;
  for (const NodePath& branch : frame.branches) {
    for (std::size_t i = 1; i < branch.size(); ++i) {
      if (branch[i] != self) {
        continue;
      }
      if (branch[i - 1] == from) {
        if (i + 1 == branch.size()) {
          is_target = true;
        } else {
          onward.push_back(branch);
        }
      }
      break;
    }
  }

  if (!onward.empty()) {
    BordercastQuery relay{frame.query, frame.bordercaster, std::move(onward)};
    NodePath& route = relay.query.accumulated_route;
    auto seen = std::find(route.begin(), route.end(), self);
    if (seen != route.end()) {
      // Shortcut the loop; the prefix up to self is still a valid path.
      route.erase(std::next(seen), route.end());
    } else {
      route.push_back(self);
    }
    ctx_.channel->broadcast(self, std::move(relay));
    ++stats_.relays;
  }

  if (is_target && handler_ != nullptr) {
    handler_->handle_query(frame.query);
  }
}

}  // namespace zrpsim
