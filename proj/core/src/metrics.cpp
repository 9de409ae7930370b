#include "stagesim/metrics.hpp"

#include <stdexcept>

#include "stagesim/simulation.hpp"
#include "stagesim/stage.hpp"

namespace stagesim {

std::optional<double> SamplePoint::get(std::string_view field) const {
  for (const auto& [name, value] : fields) {
    if (name == field) return value;
  }
  return std::nullopt;
}

void MetricsStore::record(Tick tick, std::string_view name, Fields fields) {
  auto it = series_.find(name);
  if (it == series_.end()) it = series_.emplace(std::string(name), std::vector<SamplePoint>{}).first;
  auto& points = it->second;
  if (!points.empty() && tick < points.back().tick) {
    throw std::invalid_argument("sample for '" + std::string(name) +
                                "' is older than the series tail");
  }
  points.push_back(SamplePoint{tick, std::move(fields)});
}

void MetricsStore::increment(std::string_view counter, std::uint64_t by) {
  auto it = counters_.find(counter);
  if (it == counters_.end()) it = counters_.emplace(std::string(counter), 0).first;
  it->second += by;
}

std::uint64_t MetricsStore::counter(std::string_view name) const {
  const auto it = counters_.find(name);
  return it == counters_.end() ? 0 : it->second;
}

const std::vector<SamplePoint>& MetricsStore::series(std::string_view name) const {
  static const std::vector<SamplePoint> kEmpty;
  const auto it = series_.find(name);
  return it == series_.end() ? kEmpty : it->second;
}

StageStats& MetricsStore::stage(std::string_view name) {
  auto it = stages_.find(name);
  if (it == stages_.end()) it = stages_.emplace(std::string(name), StageStats{}).first;
  return it->second;
}

const StageStats* MetricsStore::findStage(std::string_view name) const {
  const auto it = stages_.find(name);
  return it == stages_.end() ? nullptr : &it->second;
}

TimerId pollQueueDepth(Simulation& sim, const Stage& stage, Tick period,
                       std::string_view name) {
  const std::string seriesName(name);
  return sim.clock().setInterval(
      [&sim, &stage, seriesName] {
        sim.record(seriesName,
                   {{std::string(series::kQueueSize),
                     static_cast<double>(stage.inQueue().length())}});
      },
      period, Phase::kObserve);
}

}  // namespace stagesim
