#pragma once

#include "stagesim/stage.hpp"

namespace stagesim {

struct RetryConfig {
  int attempts = 3;  // total tries, including the first
  Tick backoff = 0;  // ticks to wait between a failed try and the next
};

/// Re-offers an event to the wrapped stage until it succeeds or the attempt
/// budget runs out. A rejection by the wrapped stage counts as a failed try.
class Retry : public Stage {
 public:
  /// Throws std::invalid_argument for attempts < 1 or backoff < 0.
  Retry(Simulation& sim, std::string name, Stage& wrapped, RetryConfig config = {});

  const RetryConfig& config() const noexcept { return config_; }

  std::string kind() const override { return "retry"; }
  StageParameters parameters() const override;
  std::vector<const Stage*> children() const override { return {&wrapped_}; }

 protected:
  Task<void> workOn(Event& event) override;

 private:
  Stage& wrapped_;
  RetryConfig config_;
};

}  // namespace stagesim
