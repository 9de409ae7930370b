#include "stagesim/models/circleci.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "stagesim/stages/retry.hpp"

namespace stagesim::models {

namespace {

ServiceConfig toServiceConfig(const DatabaseConfig& config) {
  return ServiceConfig{LatencyModel::exponential(config.meanLatency), config.availability,
                       config.capacity, config.workers};
}

}  // namespace

Database::Database(Simulation& sim, std::string name, DatabaseConfig config)
    : ServiceStage(sim, std::move(name), toServiceConfig(config)), config_(config) {
  if (config_.degradation.slope < 0.0) {
    throw std::invalid_argument("degradation slope must be >= 0");
  }
}

StageParameters Database::parameters() const {
  auto params = ServiceStage::parameters();
  const auto& d = config_.degradation;
  std::ostringstream slope;
  slope << d.slope;
  params["degradation"] =
      d.enabled ? "knee:" + std::to_string(d.knee) + ",slope:" + slope.str() : "off";
  return params;
}

double Database::latencyMultiplier() const {
  const auto& d = config_.degradation;
  if (!d.enabled) return 1.0;
  const std::size_t inFlight = inQueue().busyWorkers();
  if (inFlight <= d.knee) return 1.0;
  return 1.0 + d.slope * static_cast<double>(inFlight - d.knee);
}

BuildService::BuildService(Simulation& sim, std::string name, Stage& next, FifoQueue queue)
    : Stage(sim, std::move(name), std::move(queue)), next_(next) {}

Task<void> BuildService::workOn(Event& event) { co_await forward(next_, event); }

std::string_view toString(CircleCiVariant variant) {
  switch (variant) {
    case CircleCiVariant::kOriginal: return "original";
    case CircleCiVariant::kA: return "a";
    case CircleCiVariant::kB: return "b";
    case CircleCiVariant::kC: return "c";
  }
  return "unknown";
}

CircleCiVariant parseCircleCiVariant(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "original") return CircleCiVariant::kOriginal;
  if (lower == "a") return CircleCiVariant::kA;
  if (lower == "b") return CircleCiVariant::kB;
  if (lower == "c") return CircleCiVariant::kC;
  throw std::invalid_argument("unknown circleci variant '" + std::string(text) + "'");
}

ScenarioConfig circleCiSurge(const CircleCiParams& params, std::uint64_t seed) {
  ScenarioConfig scenario;
  scenario.eventsPer1000Ticks = params.initialRate;
  scenario.keyspaceMean = params.keyspaceMean;
  scenario.keyspaceStd = params.keyspaceStd;
  scenario.totalEvents = params.totalEvents;
  scenario.seed = seed;
  scenario.rateSchedule.push_back(
      RateRule{RateRule::When::kEvery, params.rampEvery, RateRule::Op::kAdd, params.rampDelta});
  return scenario;
}

Model buildCircleCi(Simulation& sim, CircleCiVariant variant, const CircleCiParams& params) {
  Model model;
  model.name = "circleci:" + std::string(toString(variant));
  model.scenario = circleCiSurge(params, sim.random().seed());

  Stage& database = model.emplace<Database>(sim, "database", params.database);
  Stage* downstream = &database;
  if (variant != CircleCiVariant::kC) {
    downstream = &model.emplace<Retry>(sim, "retry", database,
                                       RetryConfig{params.retryAttempts, params.retryBackoff});
  }

  FifoQueue queue(FifoQueue::kUnbounded, params.serviceWorkers);
  if (variant == CircleCiVariant::kA) queue = FifoQueue(params.queueBound, params.serviceWorkers);
  if (variant == CircleCiVariant::kB) queue = FifoQueue(FifoQueue::kUnbounded, params.limitedWorkers);

  model.entry = &model.emplace<BuildService>(sim, "build-service", *downstream, queue);
  return model;
}

}  // namespace stagesim::models

namespace stagesim {

Stage* Model::find(std::string_view stageName) const {
  for (const auto& stage : stages) {
    if (stage->name() == stageName) return stage.get();
  }
  return nullptr;
}

std::vector<std::string> registeredModels() {
  return {"circleci:original", "circleci:a", "circleci:b", "circleci:c"};
}

Model buildRegisteredModel(Simulation& sim, std::string_view name, std::uint64_t seed,
                           const models::CircleCiParams& params) {
  constexpr std::string_view kPrefix = "circleci:";
  if (!name.starts_with(kPrefix)) {
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
  }
  Model model = models::buildCircleCi(sim, models::parseCircleCiVariant(name.substr(kPrefix.size())), params);
  model.scenario.seed = seed;
  return model;
}

}  // namespace stagesim
