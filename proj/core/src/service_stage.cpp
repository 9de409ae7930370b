#include "stagesim/stages/service_stage.hpp"

#include <sstream>

namespace stagesim {

double LatencyModel::draw(Rng& rng) const {
  if (mean < 0.0) throw std::invalid_argument("latency mean must be >= 0");
  if (kind == Kind::kFixed || mean == 0.0) return mean;
  return std::exponential_distribution<double>(1.0 / mean)(rng);
}

ServiceStage::ServiceStage(Simulation& sim, std::string name, ServiceConfig config)
    : Stage(sim, name, FifoQueue(config.capacity, config.workers)),
      config_(config),
      latencyRng_(sim.rng(std::string(streams::kLatency) + ":" + name)),
      availabilityRng_(sim.rng(std::string(streams::kAvailability) + ":" + name)) {
  if (!(config_.availability >= 0.0 && config_.availability <= 1.0)) {
    throw std::invalid_argument("availability must be within [0, 1]");
  }
  if (config_.latency.mean < 0.0) throw std::invalid_argument("latency mean must be >= 0");
}

StageParameters ServiceStage::parameters() const {
  auto params = Stage::parameters();
  std::ostringstream mean, availability;
  mean << config_.latency.mean;
  availability << config_.availability;
  params["latency"] = (config_.latency.kind == LatencyModel::Kind::kFixed ? "fixed:" : "exponential:") +
                      mean.str();
  params["availability"] = availability.str();
  return params;
}

Task<void> ServiceStage::workOn(Event&) {
  const double raw = config_.latency.draw(latencyRng_) * latencyMultiplier();
  co_await sim().wait(roundToTick(raw));
  if (!sampleBernoulli(availabilityRng_, config_.availability)) {
    throw Failure(name() + ": unavailable");
  }
}

}  // namespace stagesim
