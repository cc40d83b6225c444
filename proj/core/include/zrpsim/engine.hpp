#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "zrpsim/types.hpp"

namespace zrpsim {

/// Raised when an event is scheduled before the current clock.
class PastTime : public std::logic_error {
 public:
  PastTime(SimTime requested, SimTime clock);

  SimTime requested() const noexcept { return requested_; }
  SimTime clock() const noexcept { return clock_; }

 private:
  SimTime requested_;
  SimTime clock_;
};

/// Small label attached to an event; folded into the trace digest so that two
/// runs can be compared for identical dispatch sequences.
struct EventTag {
  std::uint16_t kind = 0;
  std::uint32_t node = 0;
};

/// Deterministic discrete-event engine.
///
/// Events fire in (fire_at, seq) order where seq is the insertion counter, so
/// simultaneous events run FIFO. Time comparisons are exact.
class Engine {
 public:
  using Action = std::function<void()>;

  class Ticket {
   public:
    Ticket() = default;
    bool valid() const noexcept { return seq_ != kInvalid; }
    std::uint64_t seq() const noexcept { return seq_; }

   private:
    friend class Engine;
    static constexpr std::uint64_t kInvalid = std::numeric_limits<std::uint64_t>::max();
    explicit Ticket(std::uint64_t seq) : seq_(seq) {}
    std::uint64_t seq_ = kInvalid;
  };

  using Observer = std::function<void(SimTime, std::uint64_t seq, EventTag)>;

  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Throws PastTime if fire_at < now().
  Ticket schedule(SimTime fire_at, Action action, EventTag tag = {});
  Ticket schedule_after(SimTime delay, Action action, EventTag tag = {});

  /// True iff the event was still pending; it will then never fire.
  bool cancel(Ticket ticket);

  /// Dispatches every event with fire_at <= horizon, then sets the clock to
  /// horizon. Returns the number of events dispatched by this call.
  std::uint64_t run_until(SimTime horizon);

  SimTime now() const noexcept { return now_; }
  std::size_t pending() const noexcept { return live_; }
  std::uint64_t dispatched() const noexcept { return dispatched_; }

  /// FNV-1a digest over (fire_at bits, seq, tag) of every dispatched event.
  std::uint64_t trace_digest() const noexcept { return digest_; }

  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  enum class State : std::uint8_t { Pending, Fired, Cancelled };

  struct Entry {
    SimTime fire_at;
    std::uint64_t seq;
    EventTag tag;
    Action action;
  };

  struct Later {
    bool operator()(const Entry& a, const Entry& b) const noexcept {
      if (a.fire_at != b.fire_at) {
        return a.fire_at > b.fire_at;
      }
      return a.seq > b.seq;
    }
  };

  void fold_digest(const Entry& e) noexcept;

  std::vector<Entry> heap_;
  std::vector<State> state_;
  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::size_t live_ = 0;
  std::uint64_t digest_ = 0xcbf29ce484222325ull;
  Observer observer_;
};

}  // namespace zrpsim
