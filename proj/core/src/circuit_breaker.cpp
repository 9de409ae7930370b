#include "stagesim/stages/circuit_breaker.hpp"

#include <sstream>

namespace stagesim {

std::string_view toString(BreakerState state) {
  switch (state) {
    case BreakerState::kClosed: return "closed";
    case BreakerState::kOpen: return "open";
    case BreakerState::kHalfOpen: return "half-open";
  }
  return "unknown";
}

BreakerStateMachine::BreakerStateMachine(BreakerConfig config) : config_(config) {
  if (config_.windowSize == 0) throw std::invalid_argument("breaker window must be >= 1");
  if (!(config_.failureThreshold >= 0.0 && config_.failureThreshold <= 1.0)) {
    throw std::invalid_argument("breaker threshold must be within [0, 1]");
  }
  if (config_.cooldown < 0) throw std::invalid_argument("breaker cooldown must be >= 0");
}

void BreakerStateMachine::moveTo(BreakerState next, Tick now) {
  transitions_.push_back({state_, next, now});
  state_ = next;
  ++generation_;
  window_.clear();
  failures_ = 0;
  probeInFlight_ = false;
  if (next == BreakerState::kOpen) openedAt_ = now;
}

BreakerStateMachine::Ticket BreakerStateMachine::admit(Tick now) {
  switch (state_) {
    case BreakerState::kClosed:
      return {Admission::kForward, generation_};
    case BreakerState::kOpen:
      if (now < openedAt_ + config_.cooldown) return {Admission::kReject, generation_};
      moveTo(BreakerState::kHalfOpen, now);
      probeInFlight_ = true;
      return {Admission::kProbe, generation_};
    case BreakerState::kHalfOpen:
      break;
  }
  // Only one probe at a time; everyone else fails fast until it reports.
  return {Admission::kReject, generation_};
}

void BreakerStateMachine::record(const Ticket& ticket, bool success, Tick now) {
  if (ticket.generation != generation_) return;
  if (ticket.admission == Admission::kProbe) {
    moveTo(success ? BreakerState::kClosed : BreakerState::kOpen, now);
    return;
  }
  if (ticket.admission != Admission::kForward || state_ != BreakerState::kClosed) return;

  window_.push_back(!success);
  if (!success) ++failures_;
  if (window_.size() > config_.windowSize) {
    if (window_.front()) --failures_;
    window_.pop_front();
  }
  if (window_.size() == config_.windowSize &&
      static_cast<double>(failures_) >=
          config_.failureThreshold * static_cast<double>(config_.windowSize)) {
    moveTo(BreakerState::kOpen, now);
  }
}

CircuitBreaker::CircuitBreaker(Simulation& sim, std::string name, Stage& wrapped,
                               BreakerConfig config)
    : Stage(sim, std::move(name)), wrapped_(wrapped), machine_(config) {}

StageParameters CircuitBreaker::parameters() const {
  auto params = Stage::parameters();
  const auto& config = machine_.config();
  std::ostringstream threshold;
  threshold << config.failureThreshold;
  params["window"] = std::to_string(config.windowSize);
  params["threshold"] = threshold.str();
  params["cooldown"] = std::to_string(config.cooldown);
  return params;
}

Task<void> CircuitBreaker::workOn(Event& event) {
  const auto ticket = machine_.admit(clock().now());
  if (ticket.admission == BreakerStateMachine::Admission::kReject) {
    ++shortCircuited_;
    throw Failure(name() + ": circuit open");
  }
  const Response response = co_await wrapped_.add(event);
  machine_.record(ticket, response.ok(), clock().now());
  if (!response.ok()) throw Failure(name() + ": " + wrapped_.name() + " failed");
}

}  // namespace stagesim
