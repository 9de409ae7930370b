#pragma once

#include "stagesim/stage.hpp"

namespace stagesim {

/// Distribution of the time a leaf stage spends on one event.
struct LatencyModel {
  enum class Kind { kFixed, kExponential };
  Kind kind = Kind::kFixed;
  double mean = 0.0;  // ticks

  static LatencyModel fixed(double ticks) { return {Kind::kFixed, ticks}; }
  static LatencyModel exponential(double mean) { return {Kind::kExponential, mean}; }

  /// Unrounded draw, in ticks.
  double draw(Rng& rng) const;
  Tick sample(Rng& rng) const { return roundToTick(draw(rng)); }
};

struct ServiceConfig {
  LatencyModel latency = LatencyModel::fixed(0);
  double availability = 1.0;  // probability that an event succeeds
  std::size_t capacity = FifoQueue::kUnbounded;
  std::size_t workers = FifoQueue::kUnbounded;
};

/// Leaf stage: waits a sampled latency, then fails with probability
/// 1 - availability. Latency and availability draws use separate streams.
class ServiceStage : public Stage {
 public:
  /// Throws std::invalid_argument for availability outside [0, 1] or a
  /// negative latency mean.
  ServiceStage(Simulation& sim, std::string name, ServiceConfig config);

  const ServiceConfig& config() const noexcept { return config_; }

  std::string kind() const override { return "service"; }
  StageParameters parameters() const override;

 protected:
  Task<void> workOn(Event& event) override;

  /// Scales the sampled latency; called once the event holds a worker.
  virtual double latencyMultiplier() const { return 1.0; }

 private:
  ServiceConfig config_;
  Rng& latencyRng_;
  Rng& availabilityRng_;
};

}  // namespace stagesim
