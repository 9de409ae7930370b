#include "stagesim/model_config.hpp"

namespace stagesim {

namespace {

bool isLeaf(const StageConfig& config) {
  return std::holds_alternative<ServiceConfig>(config) ||
         std::holds_alternative<models::DatabaseConfig>(config);
}

/// Pass-through stage with its own queue, for modelling a worker pool in
/// front of something else.
class PassThrough : public Stage {
 public:
  PassThrough(Simulation& sim, std::string name, Stage& next, FifoQueue queue)
      : Stage(sim, std::move(name), std::move(queue)), next_(next) {}

  std::string kind() const override { return "queue"; }
  std::vector<const Stage*> children() const override { return {&next_}; }

 protected:
  Task<void> workOn(Event& event) override { co_await forward(next_, event); }

 private:
  Stage& next_;
};

}  // namespace

Model buildChain(Simulation& sim, const ChainSpec& spec, const ScenarioConfig& scenario) {
  if (spec.stages.empty()) throw std::invalid_argument("model has no stages");
  for (std::size_t i = 0; i < spec.stages.size(); ++i) {
    const StageSpec& stage = spec.stages[i];
    if (stage.name.empty()) throw std::invalid_argument("stage " + std::to_string(i) + " has no name");
    const bool last = i + 1 == spec.stages.size();
    if (last && !isLeaf(stage.config)) {
      throw std::invalid_argument("stage '" + stage.name + "' must be a service or database leaf");
    }
    if (!last && isLeaf(stage.config)) {
      throw std::invalid_argument("leaf stage '" + stage.name + "' must be last in the chain");
    }
  }

  Model model;
  model.name = spec.name;
  model.scenario = scenario;
  Stage* next = nullptr;
  // Build innermost first so every wrapper can bind to its target.
  for (auto it = spec.stages.rbegin(); it != spec.stages.rend(); ++it) {
    const std::string& name = it->name;
    try {
      next = std::visit(
          [&](const auto& config) -> Stage* {
            using T = std::decay_t<decltype(config)>;
            if constexpr (std::is_same_v<T, ServiceConfig>) {
              return &model.emplace<ServiceStage>(sim, name, config);
            } else if constexpr (std::is_same_v<T, models::DatabaseConfig>) {
              return &model.emplace<models::Database>(sim, name, config);
            } else if constexpr (std::is_same_v<T, PassThroughSpec>) {
              return &model.emplace<PassThrough>(sim, name, *next,
                                                 FifoQueue(config.queue.capacity, config.queue.workers));
            } else if constexpr (std::is_same_v<T, RetryConfig>) {
              return &model.emplace<Retry>(sim, name, *next, config);
            } else if constexpr (std::is_same_v<T, TimeoutConfig>) {
              return &model.emplace<Timeout>(sim, name, *next, config);
            } else if constexpr (std::is_same_v<T, CacheConfig>) {
              return &model.emplace<Cache>(sim, name, *next, config);
            } else {
              return &model.emplace<CircuitBreaker>(sim, name, *next, config);
            }
          },
          it->config);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("stage '" + name + "': " + e.what());
    }
  }
  model.entry = next;
  return model;
}

}  // namespace stagesim
