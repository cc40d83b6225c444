#include "zrpsim/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace zrpsim {
namespace {

std::string past_time_message(SimTime requested, SimTime clock) {
  std::ostringstream os;
  os << "event scheduled at t=" << requested << " before current clock t=" << clock;
  return os.str();
}

}  // namespace

PastTime::PastTime(SimTime requested, SimTime clock)
    : std::logic_error(past_time_message(requested, clock)), requested_(requested), clock_(clock) {}

Engine::Ticket Engine::schedule(SimTime fire_at, Action action, EventTag tag) {
  if (!std::isfinite(fire_at)) {
    throw std::invalid_argument("event time must be finite");
  }
  if (fire_at < now_) {
    throw PastTime(fire_at, now_);
  }
  const std::uint64_t seq = next_seq_++;
  state_.push_back(State::Pending);
  heap_.push_back(Entry{fire_at, seq, tag, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  ++live_;
  return Ticket(seq);
}

Engine::Ticket Engine::schedule_after(SimTime delay, Action action, EventTag tag) {
  return schedule(now_ + delay, std::move(action), tag);
}

bool Engine::cancel(Ticket ticket) {
  if (!ticket.valid() || ticket.seq_ >= state_.size()) {
    return false;
  }
  State& s = state_[ticket.seq_];
  if (s != State::Pending) {
    return false;
  }
  s = State::Cancelled;
  --live_;
  return true;
}

std::uint64_t Engine::run_until(SimTime horizon) {
  if (horizon < now_) {
    throw PastTime(horizon, now_);
  }
  std::uint64_t count = 0;
  while (!heap_.empty() && heap_.front().fire_at <= horizon) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    State& s = state_[e.seq];
    if (s == State::Cancelled) {
      continue;
    }
    s = State::Fired;
    --live_;
    now_ = e.fire_at;
    ++count;
    ++dispatched_;
    fold_digest(e);
    if (observer_) {
      observer_(e.fire_at, e.seq, e.tag);
    }
    e.action();
  }
  now_ = horizon;
  return count;
}

void Engine::fold_digest(const Entry& e) noexcept {
  auto mix = [this](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      digest_ ^= (v >> (8 * i)) & 0xffu;
      digest_ *= 0x100000001b3ull;
    }
  };
  mix(std::bit_cast<std::uint64_t>(e.fire_at));
  mix(e.seq);
  mix((static_cast<std::uint64_t>(e.tag.kind) << 32) | e.tag.node);
}

}  // namespace zrpsim
