#pragma once

#include <coroutine>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace stagesim {

/// Abstract simulation time. One tick is conventionally a millisecond.
using Tick = std::int64_t;

/// Rounds a non-negative real duration to the integer timeline (half-up).
Tick roundToTick(double duration);

/// Identifies a one-shot or recurring callback so it can be cancelled.
struct TimerId {
  std::uint64_t value = 0;
  friend bool operator==(TimerId, TimerId) = default;
};

/// Work due at the same tick runs in two passes: every kNormal task first,
/// then kObserve tasks. Observers see the settled state of a tick.
enum class Phase : std::uint8_t { kNormal = 0, kObserve = 1 };

/// Time-skipping discrete-event scheduler.
///
/// Tasks are ordered by (fireAt, phase, seq) where seq is a global insertion
/// counter, so same-tick work runs strictly in scheduling order. The clock is
/// single-threaded; simulated concurrency comes from coroutines suspending in
/// wait() and being resumed here.
class Clock {
 public:
  Clock() = default;
  Clock(const Clock&) = delete;
  Clock& operator=(const Clock&) = delete;

  Tick now() const noexcept { return now_; }

  /// Resumes `handle` after `delay` ticks. A zero delay resumes in the
  /// current tick, after everything already queued for it.
  void resumeAfter(Tick delay, std::coroutine_handle<> handle);

  TimerId schedule(Tick delay, std::function<void()> action,
                   Phase phase = Phase::kNormal);

  /// Fires `action` at now+period, now+2*period, ... until cancelled.
  TimerId setInterval(std::function<void()> action, Tick period,
                      Phase phase = Phase::kNormal);

  /// Cancelling an unknown or already-fired one-shot timer is a no-op.
  void cancel(TimerId id);
  void cancelAllIntervals();

  /// Jumps to the earliest pending tick and runs everything due there,
  /// including work scheduled for that same tick while it runs. Returns the
  /// tick that ran, or nullopt when nothing is pending ("drained").
  std::optional<Tick> advance();

  bool idle() const noexcept { return pending_ == 0; }
  std::size_t pendingCount() const noexcept { return pending_; }
  std::uint64_t executedCount() const noexcept { return executed_; }

  /// Drops every pending task without running it.
  void clear();

  /// Awaitable returned by wait(); resumes the caller `duration` ticks later.
  struct WaitAwaiter {
    Clock& clock;
    Tick duration;
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) {
      clock.resumeAfter(duration, h);
    }
    void await_resume() const noexcept {}
  };

  /// Throws std::invalid_argument for negative durations.
  WaitAwaiter wait(Tick duration);

 private:
  struct Entry {
    Tick fireAt;
    Phase phase;
    std::uint64_t seq;
    std::uint64_t timer;  // 0 for coroutine resumptions
    std::coroutine_handle<> handle;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const noexcept {
      if (a.fireAt != b.fireAt) return a.fireAt > b.fireAt;
      if (a.phase != b.phase) return a.phase > b.phase;
      return a.seq > b.seq;
    }
  };
  struct Timer {
    std::function<void()> action;
    Tick period = 0;  // 0 for one-shot
    Phase phase = Phase::kNormal;
  };

  void push(Tick fireAt, Phase phase, std::uint64_t timer,
            std::coroutine_handle<> handle);
  bool dropCancelledTop();

  Tick now_ = 0;
  std::uint64_t nextSeq_ = 0;
  std::uint64_t nextTimer_ = 1;
  std::size_t pending_ = 0;
  std::uint64_t executed_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::unordered_map<std::uint64_t, Timer> timers_;
};

}  // namespace stagesim
