#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "stagesim/event.hpp"
#include "stagesim/run_result.hpp"
#include "stagesim/simulation.hpp"

namespace stagesim {

class Stage;

/// A change to the arrival rate, either once (at a tick) or repeatedly
/// (every N ticks, first firing at N).
struct RateRule {
  enum class When { kAt, kEvery };
  enum class Op { kAdd, kSet };

  When when = When::kEvery;
  Tick ticks = 1000;
  Op op = Op::kAdd;
  double value = 0.0;

  friend bool operator==(const RateRule&, const RateRule&) = default;
};

struct ScenarioConfig {
  double eventsPer1000Ticks = 1000.0;
  double keyspaceMean = 1000.0;
  double keyspaceStd = 200.0;
  std::uint64_t totalEvents = 1000;
  std::uint64_t seed = 1;
  std::vector<RateRule> rateSchedule;

  /// Throws std::invalid_argument describing the first invalid field.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct RunOptions {
  Tick maxTicks = 50'000'000;  // abort budget; the run throws RunAborted past it
  Tick pollPeriod = 1;         // entry-queue depth sampling; 0 disables it
};

/// The run exceeded its tick budget before draining.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(const std::string& what, RunResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const RunResult& partial() const noexcept { return partial_; }

 private:
  RunResult partial_;
};

/// Open-loop event injector.
///
/// Arrivals are uniformly spaced at 1000 / rate ticks. Arrival times are
/// accumulated as reals and floored onto the tick timeline, so a rate of
/// 1500 yields one, then two, then one event per tick and so on. A rate
/// change re-spaces the next arrival from the previous one immediately.
class Scenario {
 public:
  /// Validates `config`. The simulation's seed drives all sampling.
  Scenario(Simulation& sim, ScenarioConfig config);

  const ScenarioConfig& config() const noexcept { return config_; }
  double rate() const noexcept { return rate_; }
  /// Throws std::invalid_argument for a non-positive rate.
  void setRate(double eventsPer1000Ticks);

  std::int64_t sampleKey();

  /// Injects config().totalEvents events into `entry`, then advances the
  /// clock until every event reached a terminal state and all detached
  /// activities finished. Recurring timers are cancelled on return.
  RunResult run(Stage& entry, const RunOptions& options = {});

  /// Events injected so far, in injection order.
  const std::deque<Event>& events() const noexcept { return events_; }

 private:
  void scheduleNextArrival();
  void inject(Stage& entry);
  Task<void> deliver(Stage& entry, Event& event);

  Simulation& sim_;
  ScenarioConfig config_;
  Rng& keyRng_;
  double rate_;
  double lastArrival_ = 0.0;  // real-valued arrival time of the last event
  std::uint64_t generation_ = 0;
  std::deque<Event> events_;
  RunResult result_;
  Stage* entry_ = nullptr;
};

}  // namespace stagesim
