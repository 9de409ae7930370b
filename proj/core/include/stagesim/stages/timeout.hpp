#pragma once

#include <memory>

#include "stagesim/stage.hpp"

namespace stagesim {

struct TimeoutConfig {
  Tick deadline = 1000;
};

/// Fails an event that the wrapped stage has not finished within the
/// deadline. The wrapped work is abandoned, not revoked: it keeps its worker
/// downstream until it completes on its own.
class Timeout : public Stage {
 public:
  /// Throws std::invalid_argument for deadline < 1.
  Timeout(Simulation& sim, std::string name, Stage& wrapped, TimeoutConfig config);

  const TimeoutConfig& config() const noexcept { return config_; }
  std::uint64_t timeouts() const noexcept { return timeouts_; }

  std::string kind() const override { return "timeout"; }
  StageParameters parameters() const override;
  std::vector<const Stage*> children() const override { return {&wrapped_}; }

 protected:
  Task<void> workOn(Event& event) override;

 private:
  struct Race;
  static Task<void> runWrapped(Stage& wrapped, Event& event, std::shared_ptr<Race> race);

  Stage& wrapped_;
  TimeoutConfig config_;
  std::uint64_t timeouts_ = 0;
};

}  // namespace stagesim
