#pragma once

#include <cstdint>
#include <exception>
#include <string_view>
#include <unordered_set>

#include "stagesim/clock.hpp"
#include "stagesim/metrics.hpp"
#include "stagesim/random.hpp"
#include "stagesim/task.hpp"

namespace stagesim {

/// Everything a running model shares: the clock, seeded random streams, and
/// the metrics store. Stages hold a reference to it and must not outlive it.
class Simulation {
 public:
  explicit Simulation(std::uint64_t seed = 1);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  Clock& clock() noexcept { return clock_; }
  const Clock& clock() const noexcept { return clock_; }
  Tick now() const noexcept { return clock_.now(); }
  Clock::WaitAwaiter wait(Tick duration) { return clock_.wait(duration); }

  RandomStreams& random() noexcept { return random_; }
  Rng& rng(std::string_view stream) { return random_.stream(stream); }

  MetricsStore& metrics() noexcept { return metrics_; }
  const MetricsStore& metrics() const noexcept { return metrics_; }
  void record(std::string_view name, Fields fields);

  /// Starts `activity` immediately as a detached root. It runs until its
  /// first suspension before spawn() returns.
  void spawn(Task<void> activity);
  std::size_t activeActivities() const noexcept { return roots_.size(); }

  /// Rethrows the first exception that escaped a detached activity.
  void rethrowIfFailed() const;

  /// Drops all pending timers and destroys every suspended activity. Used
  /// to abandon a run; afterwards the simulation holds no coroutine frames.
  void shutdown();

 private:
  struct Detached;
  static Detached runDetached(Simulation& sim, Task<void> activity);

  Clock clock_;
  RandomStreams random_;
  MetricsStore metrics_;
  std::unordered_set<void*> roots_;
  std::exception_ptr failure_;
};

}  // namespace stagesim
