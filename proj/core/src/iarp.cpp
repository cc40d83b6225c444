#include "zrpsim/iarp.hpp"

#include <algorithm>
#include <stdexcept>

namespace zrpsim {
namespace {

constexpr std::uint16_t kTagHello = 2;
constexpr std::uint16_t kTagPeriodicLsu = 3;
constexpr std::uint16_t kTagTriggeredLsu = 4;
constexpr std::uint16_t kTagNeighborExpiry = 5;

}  // namespace

void ZoneConfig::validate() const {
  if (!(hello_interval > 0.0) || !(lsu_interval > 0.0)) {
    throw std::invalid_argument("iarp intervals must be positive");
  }
  if (!(neighbor_timeout > hello_interval)) {
    throw std::invalid_argument("iarp.neighbor_timeout must exceed iarp.hello_interval");
  }
}

IarpAgent::IarpAgent(NodeContext ctx, ZoneConfig cfg)
    : ctx_(ctx),
      cfg_(cfg),
      hello_rng_(ctx.seed, StreamPurpose::Hello, ctx.id),
      lsu_rng_(ctx.seed, StreamPurpose::Lsu, ctx.id),
      zone_(ctx.id, cfg.alpha) {
  cfg_.validate();
  db_.set_links(ctx_.id, {});
}

void IarpAgent::start() {
  Engine& engine = *ctx_.engine;
  engine.schedule_after(hello_rng_.uniform(0.0, cfg_.hello_interval), [this] { emit_hello(); },
                        EventTag{kTagHello, ctx_.id.value});
  periodic_lsu_ = engine.schedule_after(
      lsu_rng_.uniform(0.0, cfg_.lsu_interval), [this] { originate_lsu(); },
      EventTag{kTagPeriodicLsu, ctx_.id.value});
}

void IarpAgent::emit_hello() {
  ctx_.channel->broadcast(ctx_.id, Hello{});
  ++stats_.hellos_sent;
  const double next = cfg_.hello_interval * hello_rng_.uniform(0.9, 1.1);
  ctx_.engine->schedule_after(next, [this] { emit_hello(); }, EventTag{kTagHello, ctx_.id.value});
}

LinkStateUpdate IarpAgent::originate_lsu() {
  purge_records();
  LinkStateUpdate lsu;
  lsu.origin = ctx_.id;
  lsu.neighbor_list = neighbor_ids();
  lsu.seq_no = ++lsu_seq_;
  lsu.ttl = cfg_.alpha;
  ctx_.channel->broadcast(ctx_.id, lsu);
  ++stats_.lsus_originated;
  schedule_periodic_lsu();
  return lsu;
}

void IarpAgent::schedule_periodic_lsu() {
  ctx_.engine->cancel(periodic_lsu_);
  const double next = cfg_.lsu_interval * lsu_rng_.uniform(0.9, 1.1);
  periodic_lsu_ = ctx_.engine->schedule_after(next, [this] { originate_lsu(); },
                                              EventTag{kTagPeriodicLsu, ctx_.id.value});
}

void IarpAgent::trigger_lsu() {
  if (triggered_pending_) {
    return;
  }
  triggered_pending_ = true;
  // Changes discovered at the same instant share one update.
  ctx_.engine->schedule_after(
      0.0,
      [this] {
        triggered_pending_ = false;
        originate_lsu();
      },
      EventTag{kTagTriggeredLsu, ctx_.id.value});
}

bool IarpAgent::process_lsu(const LinkStateUpdate& lsu) {
  if (lsu.origin == ctx_.id || lsu.ttl == 0) {
    return false;
  }
  if (lsu.origin.value >= records_.size()) {
    records_.resize(lsu.origin.value + 1);
  }
  Record& rec = records_[lsu.origin.value];
  if (rec.known && lsu.seq_no <= rec.seq) {
    return false;
  }
  rec.known = true;
  rec.installed = true;
  rec.seq = lsu.seq_no;
  rec.heard_at = ctx_.now();
  if (db_.set_links(lsu.origin, lsu.neighbor_list)) {
    dirty_ = true;
  }
  if (lsu.ttl - 1 == 0) {
    return false;
  }
  LinkStateUpdate relay = lsu;
  relay.ttl = lsu.ttl - 1;
  ctx_.channel->broadcast(ctx_.id, std::move(relay));
  ++stats_.lsus_relayed;
  return true;
}

void IarpAgent::purge_records() {
  const SimTime now = ctx_.now();
  const double hold = cfg_.lsu_hold();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    Record& rec = records_[i];
    if (rec.installed && rec.heard_at + hold <= now) {
      rec.installed = false;  // keep seq: stored sequence numbers never go back
      if (db_.erase(NodeId{static_cast<std::uint32_t>(i)})) {
        dirty_ = true;
      }
    }
  }
}

void IarpAgent::on_hello(NodeId from) {
  const SimTime now = ctx_.now();
  auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), from,
                             [](const Neighbor& n, NodeId id) { return n.id < id; });
  if (it != neighbors_.end() && it->id == from) {
    it->last_heard = now;
    return;
  }
  neighbors_.insert(it, Neighbor{from, now});
  neighbor_set_changed();
  arm_expiry();
}

void IarpAgent::on_link_failure(NodeId neighbor) {
  auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), neighbor,
                             [](const Neighbor& n, NodeId id) { return n.id < id; });
  if (it == neighbors_.end() || it->id != neighbor) {
    return;
  }
  neighbors_.erase(it);
  neighbor_set_changed();
}

void IarpAgent::neighbor_set_changed() {
  db_.set_links(ctx_.id, neighbor_ids());
  dirty_ = true;
  trigger_lsu();
}

void IarpAgent::arm_expiry() {
  if (expiry_armed_ || neighbors_.empty()) {
    return;
  }
  SimTime earliest = neighbors_.front().last_heard;
  for (const Neighbor& n : neighbors_) {
    earliest = std::min(earliest, n.last_heard);
  }
  expiry_armed_ = true;
  ctx_.engine->schedule(
      std::max(earliest + cfg_.neighbor_timeout, ctx_.now()), [this] { expire_neighbors(); },
      EventTag{kTagNeighborExpiry, ctx_.id.value});
}

void IarpAgent::expire_neighbors() {
  expiry_armed_ = false;
  const SimTime now = ctx_.now();
  const auto before = neighbors_.size();
  std::erase_if(neighbors_,
                [&](const Neighbor& n) { return n.last_heard + cfg_.neighbor_timeout <= now; });
  if (neighbors_.size() != before) {
    neighbor_set_changed();
  }
  arm_expiry();
}

const ZoneTable& IarpAgent::zone() {
  if (dirty_) {
    zone_ = compute_zone(ctx_.id, db_, cfg_.alpha);
    dirty_ = false;
    ++stats_.zone_recomputes;
  }
  return zone_;
}

std::optional<NodeId> IarpAgent::intrazone_next_hop(NodeId dst) {
  if (dst == ctx_.id) {
    return std::nullopt;
  }
  return zone().next_hop(dst);
}

std::vector<NodeId> IarpAgent::neighbor_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(neighbors_.size());
  for (const Neighbor& n : neighbors_) {
    ids.push_back(n.id);
  }
  return ids;
}

bool IarpAgent::is_neighbor(NodeId node) const {
  auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), node,
                             [](const Neighbor& n, NodeId id) { return n.id < id; });
  return it != neighbors_.end() && it->id == node;
}

std::optional<std::uint32_t> IarpAgent::stored_seq(NodeId origin) const {
  if (origin.value >= records_.size() || !records_[origin.value].known) {
    return std::nullopt;
  }
  return records_[origin.value].seq;
}

}  // namespace zrpsim
