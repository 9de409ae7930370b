#include "stagesim/stages/retry.hpp"

namespace stagesim {

Retry::Retry(Simulation& sim, std::string name, Stage& wrapped, RetryConfig config)
    : Stage(sim, std::move(name)), wrapped_(wrapped), config_(config) {
  if (config_.attempts < 1) throw std::invalid_argument("retry attempts must be >= 1");
  if (config_.backoff < 0) throw std::invalid_argument("retry backoff must be >= 0");
}

StageParameters Retry::parameters() const {
  auto params = Stage::parameters();
  params["attempts"] = std::to_string(config_.attempts);
  params["backoff"] = std::to_string(config_.backoff);
  return params;
}

Task<void> Retry::workOn(Event& event) {
  for (int attempt = 1; attempt <= config_.attempts; ++attempt) {
    const Response response = co_await wrapped_.add(event);
    if (response.ok()) co_return;
    if (attempt < config_.attempts && config_.backoff > 0) {
      co_await sim().wait(config_.backoff);
    }
  }
  throw Failure(name() + ": " + std::to_string(config_.attempts) + " attempts failed");
}

}  // namespace stagesim
