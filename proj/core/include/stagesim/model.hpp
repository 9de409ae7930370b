#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stagesim/scenario.hpp"
#include "stagesim/stage.hpp"

namespace stagesim {

/// A wired stage graph plus the scenario it is meant to be driven with.
/// Stages reference the Simulation they were built in; keep it alive.
struct Model {
  std::string name;
  std::vector<std::unique_ptr<Stage>> stages;
  Stage* entry = nullptr;
  ScenarioConfig scenario;

  template <typename T, typename... Args>
  T& emplace(Args&&... args) {
    auto stage = std::make_unique<T>(std::forward<Args>(args)...);
    T& ref = *stage;
    stages.push_back(std::move(stage));
    return ref;
  }

  Stage* find(std::string_view stageName) const;
};

}  // namespace stagesim
