#pragma once

#include <string>
#include <variant>
#include <vector>

#include "stagesim/model.hpp"
#include "stagesim/models/circleci.hpp"
#include "stagesim/stages/cache.hpp"
#include "stagesim/stages/circuit_breaker.hpp"
#include "stagesim/stages/retry.hpp"
#include "stagesim/stages/service_stage.hpp"
#include "stagesim/stages/timeout.hpp"

namespace stagesim {

/// Declarative stage descriptions for models built from prebuilt stages
/// only. Custom processing logic still needs code.
struct QueueSpec {
  std::size_t capacity = FifoQueue::kUnbounded;
  std::size_t workers = FifoQueue::kUnbounded;
};
struct PassThroughSpec {
  QueueSpec queue;
};

using StageConfig = std::variant<PassThroughSpec, RetryConfig, TimeoutConfig, CacheConfig,
                                 BreakerConfig, ServiceConfig, models::DatabaseConfig>;

struct StageSpec {
  std::string name;
  StageConfig config;
};

/// Outermost stage first; each stage wraps the next. The last entry must be
/// a leaf (service or database) and only the last may be one.
struct ChainSpec {
  std::string name = "chain";
  std::vector<StageSpec> stages;
};

/// Throws std::invalid_argument when the chain shape or a stage config is
/// invalid, naming the offending stage.
Model buildChain(Simulation& sim, const ChainSpec& spec, const ScenarioConfig& scenario);

}  // namespace stagesim
