#include "zrpsim/ierp.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>
#include <unordered_set>

namespace zrpsim {
namespace {

constexpr std::uint16_t kTagQueryTimeout = 7;

bool on_path(const NodePath& path, NodeId node) {
  return std::find(path.begin(), path.end(), node) != path.end();
}

}  // namespace

void IerpConfig::validate() const {
  if (!(cache_ttl > 0.0)) {
    throw std::invalid_argument("ierp.cache_ttl must be > 0");
  }
  if (!(retry_timeout > 0.0)) {
    throw std::invalid_argument("ierp.retry_timeout must be > 0");
  }
  if (buffer_limit == 0) {
    throw std::invalid_argument("ierp.buffer_limit must be >= 1");
  }
}

void RouteCache::install(NodeId dst, NodePath route, SimTime now) {
  entries_[dst] = Entry{std::move(route), now};
}

const NodePath* RouteCache::lookup(NodeId dst, SimTime now) const {
  auto it = entries_.find(dst);
  if (it == entries_.end() || it->second.installed_at + ttl_ <= now) {
    return nullptr;
  }
  return &it->second.route;
}

bool RouteCache::purge(NodeId dst) { return entries_.erase(dst) > 0; }

NodePath remove_loops(const NodePath& path) {
  NodePath out;
  out.reserve(path.size());
  for (NodeId n : path) {
    auto seen = std::find(out.begin(), out.end(), n);
    if (seen != out.end()) {
      out.erase(std::next(seen), out.end());
    } else {
      out.push_back(n);
    }
  }
  return out;
}

bool has_repeats(const NodePath& path) {
  std::unordered_set<NodeId> seen;
  for (NodeId n : path) {
    if (!seen.insert(n).second) {
      return true;
    }
  }
  return false;
}

const char* to_string(SendOutcome o) noexcept {
  switch (o) {
    case SendOutcome::SentIntrazone: return "SentIntrazone";
    case SendOutcome::SentCached: return "SentCached";
    case SendOutcome::QueryIssued: return "QueryIssued";
    case SendOutcome::Dropped: return "Dropped";
  }
  return "?";
}

const char* to_string(ForwardOutcome o) noexcept {
  switch (o) {
    case ForwardOutcome::Progressed: return "Progressed";
    case ForwardOutcome::Redirected: return "Redirected";
    case ForwardOutcome::Delivered: return "Delivered";
    case ForwardOutcome::Dropped: return "Dropped";
  }
  return "?";
}

const char* to_string(QueryAction a) noexcept {
  switch (a) {
    case QueryAction::Replied: return "Replied";
    case QueryAction::Forwarded: return "Forwarded";
    case QueryAction::Terminated: return "Terminated";
  }
  return "?";
}

IerpAgent::IerpAgent(NodeContext ctx, IerpConfig ierp_cfg, double query_lifetime,
                     IarpAgent& iarp, BrpAgent& brp, DataSink* sink)
    : ctx_(ctx),
      cfg_(ierp_cfg),
      query_lifetime_(query_lifetime),
      iarp_(iarp),
      brp_(brp),
      sink_(sink),
      cache_(ierp_cfg.cache_ttl) {
  cfg_.validate();
}

std::size_t IerpAgent::buffered(NodeId dst) const {
  auto it = pending_.find(dst);
  return it == pending_.end() ? 0 : it->second.buffer.size();
}

SendOutcome IerpAgent::send_data(DataPacket packet) {
  const NodeId self = ctx_.id;
  packet.route = {};
  if (packet.dst == self) {
    deliver(packet);
    return SendOutcome::SentIntrazone;
  }
  if (iarp_.zone().contains(packet.dst)) {
    forward_intrazone(std::move(packet));
    return SendOutcome::SentIntrazone;
  }
  if (const NodePath* route = cache_.lookup(packet.dst, ctx_.now());
      route != nullptr && route->size() >= 2 && route->front() == self) {
    packet.route = SourceRoute{*route, 0};
    const NodeId dst = packet.dst;
    if (forward_data(std::move(packet)) != ForwardOutcome::Dropped) {
      return SendOutcome::SentCached;
    }
    // A broken first hop re-buffers the packet behind a fresh discovery.
    return pending_.contains(dst) ? SendOutcome::QueryIssued : SendOutcome::Dropped;
  }
  auto [it, fresh] = pending_.try_emplace(packet.dst);
  Pending& pending = it->second;
  if (pending.buffer.size() >= cfg_.buffer_limit) {
    drop(pending.buffer.front(), DropReason::BufferOverflow);
    pending.buffer.pop_front();
  }
  pending.buffer.push_back(std::move(packet));
  if (fresh) {
    issue_query(it->first, pending);
  }
  return SendOutcome::QueryIssued;
}

void IerpAgent::issue_query(NodeId dst, Pending& pending) {
  const SimTime now = ctx_.now();
  std::erase_if(issued_, [&](const auto& kv) { return kv.second.expires_at <= now; });

  RouteQuery query;
  query.qid = QueryId{ctx_.id, ++query_seq_};
  query.src = ctx_.id;
  query.dst = dst;
  query.accumulated_route = {ctx_.id};
  issued_[query.qid] = Issued{dst, now + query_lifetime_};
  pending.qids.push_back(query.qid);
  pending.issued_at = now;
  brp_.coverage().should_relay(query.qid, now);
  ++stats_.queries_issued;
  brp_.forward_query(std::move(query));

  pending.timer = ctx_.engine->schedule_after(
      cfg_.retry_timeout, [this, dst] { retry_or_fail(dst); },
      EventTag{kTagQueryTimeout, ctx_.id.value});
}

RetryOutcome IerpAgent::retry_or_fail(NodeId dst) {
  auto it = pending_.find(dst);
  if (it == pending_.end()) {
    return RetryOutcome::Failed;
  }
  Pending& pending = it->second;
  ctx_.engine->cancel(pending.timer);
  if (pending.retries < cfg_.retry_count) {
    ++pending.retries;
    issue_query(dst, pending);
    return RetryOutcome::QueryIssued;
  }
  ++stats_.discoveries_failed;
  for (const DataPacket& p : pending.buffer) {
    drop(p, DropReason::DiscoveryFailed);
  }
  for (const QueryId& qid : pending.qids) {
    issued_.erase(qid);
  }
  pending_.erase(it);
  return RetryOutcome::Failed;
}

QueryAction IerpAgent::handle_query(RouteQuery query) {
  const NodeId self = ctx_.id;
  const SimTime now = ctx_.now();
  if (on_path(query.accumulated_route, self)) {
    return QueryAction::Terminated;
  }
  QueryCoverage& coverage = brp_.coverage();
  if (!coverage.should_relay(query.qid, now)) {
    return QueryAction::Terminated;
  }
  coverage.record_coverage(query.qid, query.covered_summary, now);
  query.accumulated_route.push_back(self);

  const ZoneTable& zone = iarp_.zone();
  if (query.dst == self || zone.contains(query.dst)) {
    NodePath full = query.accumulated_route;
    if (query.dst != self) {
      NodePath tail = zone.path_to(query.dst);
      full.insert(full.end(), std::next(tail.begin()), tail.end());
    }
    RouteReply reply;
    reply.qid = query.qid;
    reply.full_route = remove_loops(full);
    reply.back.path.assign(query.accumulated_route.rbegin(), query.accumulated_route.rend());
    ++stats_.replies_sent;
    advance(std::move(reply), &RouteReply::back);
    return QueryAction::Replied;
  }
  brp_.forward_query(std::move(query));
  return QueryAction::Forwarded;
}

void IerpAgent::handle_reply(RouteReply reply) {
  if (reply.back.path.empty() || reply.back.holder() != ctx_.id) {
    return;
  }
  if (!reply.back.at_end()) {
    advance(std::move(reply), &RouteReply::back);
    return;
  }
  const SimTime now = ctx_.now();
  auto issued = issued_.find(reply.qid);
  if (issued == issued_.end() || issued->second.expires_at <= now ||
      reply.full_route.size() < 2 || reply.full_route.front() != ctx_.id ||
      reply.full_route.back() != issued->second.dst) {
    ++stats_.replies_ignored;
    return;
  }
  ++stats_.replies_accepted;
  const NodeId dst = issued->second.dst;
  cache_.install(dst, reply.full_route, now);

  auto it = pending_.find(dst);
  if (it == pending_.end()) {
    return;
  }
  std::deque<DataPacket> buffer = std::move(it->second.buffer);
  ctx_.engine->cancel(it->second.timer);
  pending_.erase(it);
  for (DataPacket& p : buffer) {
    p.route = SourceRoute{reply.full_route, 0};
    forward_data(std::move(p));
  }
}

void IerpAgent::on_route_error(RouteError error) {
  if (error.back.path.empty() || error.back.holder() != ctx_.id) {
    return;
  }
  if (error.back.at_end()) {
    cache_.purge(error.dst);
    return;
  }
  advance(std::move(error), &RouteError::back);
}

void IerpAgent::on_data(DataPacket packet) {
  if (packet.route.path.empty()) {
    forward_intrazone(std::move(packet));
    return;
  }
  if (packet.route.index >= packet.route.path.size() || packet.route.holder() != ctx_.id) {
    drop(packet, DropReason::Malformed);
    return;
  }
  forward_data(std::move(packet));
}

ForwardOutcome IerpAgent::forward_data(DataPacket packet) {
  const NodeId self = ctx_.id;
  if (packet.route.path.empty() || packet.route.index >= packet.route.path.size() ||
      packet.route.holder() != self) {
    drop(packet, DropReason::Malformed);
    return ForwardOutcome::Dropped;
  }
  if (packet.route.at_end()) {
    deliver(packet);
    return ForwardOutcome::Delivered;
  }
  if (packet.hops >= kHopLimit) {
    drop(packet, DropReason::HopLimit);
    return ForwardOutcome::Dropped;
  }
  ++packet.hops;
  DataPacket copy = packet;
  ForwardOutcome out = advance(std::move(copy), &DataPacket::route);
  if (out != ForwardOutcome::Dropped) {
    return out;
  }
  --packet.hops;
  if (packet.src == self && packet.route.index == 0) {
    cache_.purge(packet.dst);
    send_data(std::move(packet));
    return ForwardOutcome::Dropped;
  }
  send_route_error(packet);
  drop(packet, DropReason::LinkBroken);
  return ForwardOutcome::Dropped;
}

ForwardOutcome IerpAgent::forward_intrazone(DataPacket packet) {
  const NodeId self = ctx_.id;
  if (packet.dst == self) {
    deliver(packet);
    return ForwardOutcome::Delivered;
  }
  if (packet.hops >= kHopLimit) {
    drop(packet, DropReason::HopLimit);
    return ForwardOutcome::Dropped;
  }
  ++packet.hops;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::optional<NodeId> next = iarp_.intrazone_next_hop(packet.dst);
    if (!next) {
      break;
    }
    if (ctx_.channel->unicast(self, *next, packet) == UnicastOutcome::Delivered) {
      return attempt == 0 ? ForwardOutcome::Progressed : ForwardOutcome::Redirected;
    }
    iarp_.on_link_failure(*next);
  }
  drop(packet, DropReason::NoRoute);
  return ForwardOutcome::Dropped;
}

std::optional<SourceRoute> IerpAgent::bypass(const SourceRoute& route) {
  const NodePath& path = route.path;
  const std::size_t i = route.index;
  const std::size_t last = path.size() - 1;
  const ZoneTable& zone = iarp_.zone();

  std::vector<std::size_t> candidates{last};
  if (i + 2 < last) {
    candidates.push_back(i + 2);
  }
  for (std::size_t t : candidates) {
    if (!zone.contains(path[t])) {
      continue;
    }
    NodePath tail = zone.path_to(path[t]);
    tail.insert(tail.end(), path.begin() + static_cast<std::ptrdiff_t>(t) + 1, path.end());
    tail = remove_loops(tail);
    NodePath spliced(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i));
    spliced.insert(spliced.end(), tail.begin(), tail.end());
    return SourceRoute{std::move(spliced), i};
  }
  return std::nullopt;
}

template <class P>
ForwardOutcome IerpAgent::advance(P packet, SourceRoute P::*member) {
  SourceRoute& route = packet.*member;
  if (route.at_end()) {
    return ForwardOutcome::Delivered;
  }
  const NodeId self = ctx_.id;
  bool redirected = false;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const NodeId next = route.next();
    ++route.index;
    if (ctx_.channel->unicast(self, next, packet) == UnicastOutcome::Delivered) {
      return redirected ? ForwardOutcome::Redirected : ForwardOutcome::Progressed;
    }
    --route.index;
    iarp_.on_link_failure(next);
    if (attempt == 1) {
      break;
    }
    std::optional<SourceRoute> detour = bypass(route);
    if (!detour) {
      break;
    }
    route = std::move(*detour);
    redirected = true;
    ++stats_.redirects;
  }
  return ForwardOutcome::Dropped;
}

void IerpAgent::send_route_error(const DataPacket& packet) {
  const std::size_t i = packet.route.index;
  if (i == 0) {
    cache_.purge(packet.dst);
    return;
  }
  RouteError error;
  error.dst = packet.dst;
  error.back.path.assign(packet.route.path.rend() - static_cast<std::ptrdiff_t>(i) - 1,
                         packet.route.path.rend());
  ++stats_.route_errors_sent;
  advance(std::move(error), &RouteError::back);
}

void IerpAgent::deliver(const DataPacket& packet) {
  if (sink_ != nullptr) {
    sink_->on_delivered(packet, ctx_.now());
  }
}

void IerpAgent::drop(const DataPacket& packet, DropReason reason) {
  if (sink_ != nullptr) {
    sink_->on_dropped(packet, reason);
  }
}

}  // namespace zrpsim
