#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stagesim/clock.hpp"

namespace stagesim {

class Simulation;
class Stage;

using Fields = std::vector<std::pair<std::string, double>>;

struct SamplePoint {
  Tick tick = 0;
  Fields fields;

  std::optional<double> get(std::string_view field) const;
  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

/// Default per-stage counters. `added` counts every add() call, including
/// ones that were then rejected.
struct StageStats {
  std::uint64_t added = 0;
  std::uint64_t rejected = 0;
  std::uint64_t success = 0;
  std::uint64_t fail = 0;
  std::vector<Tick> latencies;

  friend bool operator==(const StageStats&, const StageStats&) = default;
};

/// Named time series, counters, and per-stage statistics for one run.
class MetricsStore {
 public:
  using SeriesMap = std::map<std::string, std::vector<SamplePoint>, std::less<>>;
  using CounterMap = std::map<std::string, std::uint64_t, std::less<>>;
  using StageMap = std::map<std::string, StageStats, std::less<>>;

  /// Appends to series `name`. Throws std::invalid_argument when `tick` is
  /// earlier than the series' last sample.
  void record(Tick tick, std::string_view name, Fields fields);
  void increment(std::string_view counter, std::uint64_t by = 1);

  std::uint64_t counter(std::string_view name) const;
  const std::vector<SamplePoint>& series(std::string_view name) const;
  StageStats& stage(std::string_view name);
  const StageStats* findStage(std::string_view name) const;

  const SeriesMap& allSeries() const noexcept { return series_; }
  const CounterMap& counters() const noexcept { return counters_; }
  const StageMap& stages() const noexcept { return stages_; }

  friend bool operator==(const MetricsStore&, const MetricsStore&) = default;

 private:
  SeriesMap series_;
  CounterMap counters_;
  StageMap stages_;
};

/// Series and field names written by the framework itself.
namespace series {
inline constexpr std::string_view kPoll = "poll";
inline constexpr std::string_view kQueueSize = "queueSize";
inline constexpr std::string_view kEvent = "event";
inline constexpr std::string_view kQueueWait = "queueWait";
inline constexpr std::string_view kStatus = "status";
inline constexpr std::string_view kLatency = "latency";
}  // namespace series

/// Samples `stage`'s waiting-line length every `period` ticks into series
/// `name`. Samples are taken once all of a tick's regular work has run.
TimerId pollQueueDepth(Simulation& sim, const Stage& stage, Tick period,
                       std::string_view name = series::kPoll);

}  // namespace stagesim
