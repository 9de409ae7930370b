#pragma once

#include <string_view>
#include <vector>

#include "stagesim/model.hpp"
#include "stagesim/stages/service_stage.hpp"

namespace stagesim::models {

/// Latency inflation once the database runs more than `knee` queries at
/// once: each query's sampled latency is scaled by
///   1 + slope * max(0, inFlight - knee)
/// where inFlight counts the query itself.
struct DatabaseDegradation {
  bool enabled = false;
  std::size_t knee = 50;
  double slope = 0.1;
};

struct DatabaseConfig {
  double meanLatency = 30.0;
  double availability = 0.9995;
  std::size_t capacity = 1;
  std::size_t workers = 300;
  DatabaseDegradation degradation;
};

/// Database stage: an exponential latency and an availability draw.
class Database : public ServiceStage {
 public:
  Database(Simulation& sim, std::string name, DatabaseConfig config);

  const DatabaseConfig& databaseConfig() const noexcept { return config_; }

  std::string kind() const override { return "database"; }
  StageParameters parameters() const override;

 protected:
  double latencyMultiplier() const override;

 private:
  DatabaseConfig config_;
};

/// Entry stage owning the event queue; each worker hands its event to the
/// next stage and waits for the answer.
class BuildService : public Stage {
 public:
  BuildService(Simulation& sim, std::string name, Stage& next, FifoQueue queue);

  std::string kind() const override { return "build-service"; }
  std::vector<const Stage*> children() const override { return {&next_}; }

 protected:
  Task<void> workOn(Event& event) override;

 private:
  Stage& next_;
};

enum class CircleCiVariant { kOriginal, kA, kB, kC };

std::string_view toString(CircleCiVariant variant);
/// Accepts "original", "a", "b", "c" (case-insensitive). Throws
/// std::invalid_argument otherwise.
CircleCiVariant parseCircleCiVariant(std::string_view text);

/// Every constant of the incident model. None of these are published
/// values except the database availability and pool shape; the rest were
/// calibrated so the surge reproduces the incident's failure shape.
struct CircleCiParams {
  DatabaseConfig database{
      .meanLatency = 30.0,
      .availability = 0.9995,
      .capacity = 1,
      .workers = 300,
      .degradation = {.enabled = true, .knee = 50, .slope = 0.1},
  };
  std::size_t serviceWorkers = 400;  // original queue workers
  int retryAttempts = 3;
  Tick retryBackoff = 1000;
  std::size_t queueBound = 10'000;   // variant A
  std::size_t limitedWorkers = 50;   // variant B

  // Surge scenario.
  double initialRate = 1500.0;       // events per 1000 ticks
  double rampDelta = 100.0;          // added every rampEvery ticks
  Tick rampEvery = 1000;
  double keyspaceMean = 1000.0;
  double keyspaceStd = 200.0;
  std::uint64_t totalEvents = 50'000;
};

ScenarioConfig circleCiSurge(const CircleCiParams& params, std::uint64_t seed);

/// service -> retry -> database, with the variant's single change applied:
/// A bounds the service queue, B limits its workers, C drops the retry.
Model buildCircleCi(Simulation& sim, CircleCiVariant variant,
                    const CircleCiParams& params = {});

}  // namespace stagesim::models

namespace stagesim {

/// Names accepted by buildRegisteredModel(), e.g. "circleci:original".
std::vector<std::string> registeredModels();

/// Throws std::invalid_argument for unknown names.
Model buildRegisteredModel(Simulation& sim, std::string_view name, std::uint64_t seed,
                           const models::CircleCiParams& params = {});

}  // namespace stagesim
