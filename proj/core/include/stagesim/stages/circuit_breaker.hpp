#pragma once

#include <cstdint>
#include <deque>
#include <string_view>
#include <vector>

#include "stagesim/stage.hpp"

namespace stagesim {

enum class BreakerState : std::uint8_t { kClosed, kOpen, kHalfOpen };

std::string_view toString(BreakerState state);

struct BreakerConfig {
  std::size_t windowSize = 10;   // recent outcomes considered while closed
  double failureThreshold = 0.5; // trip when failures/window >= this
  Tick cooldown = 1000;          // ticks spent open before probing
};

struct BreakerTransition {
  BreakerState from;
  BreakerState to;
  Tick at;
  friend bool operator==(const BreakerTransition&, const BreakerTransition&) = default;
};

/// Closed/open/half-open bookkeeping, independent of any stage.
///
/// Only a full window is evaluated. Outcomes reported for a ticket issued
/// under an earlier state generation are ignored, so a stale in-flight
/// result cannot pollute a fresh window.
class BreakerStateMachine {
 public:
  enum class Admission : std::uint8_t { kForward, kProbe, kReject };
  struct Ticket {
    Admission admission;
    std::uint64_t generation;
  };

  /// Throws std::invalid_argument for windowSize == 0, a threshold outside
  /// [0, 1], or a negative cooldown.
  explicit BreakerStateMachine(BreakerConfig config);

  Ticket admit(Tick now);
  void record(const Ticket& ticket, bool success, Tick now);

  BreakerState state() const noexcept { return state_; }
  const BreakerConfig& config() const noexcept { return config_; }
  const std::vector<BreakerTransition>& transitions() const noexcept { return transitions_; }
  std::size_t windowFailures() const noexcept { return failures_; }
  std::size_t windowFill() const noexcept { return window_.size(); }

 private:
  void moveTo(BreakerState next, Tick now);

  BreakerConfig config_;
  BreakerState state_ = BreakerState::kClosed;
  std::uint64_t generation_ = 0;
  std::deque<bool> window_;  // true = failure
  std::size_t failures_ = 0;
  Tick openedAt_ = 0;
  bool probeInFlight_ = false;
  std::vector<BreakerTransition> transitions_;
};

/// Fails events fast while the wrapped stage looks unhealthy.
class CircuitBreaker : public Stage {
 public:
  CircuitBreaker(Simulation& sim, std::string name, Stage& wrapped, BreakerConfig config);

  const BreakerStateMachine& machine() const noexcept { return machine_; }
  std::uint64_t shortCircuited() const noexcept { return shortCircuited_; }

  std::string kind() const override { return "breaker"; }
  StageParameters parameters() const override;
  std::vector<const Stage*> children() const override { return {&wrapped_}; }

 protected:
  Task<void> workOn(Event& event) override;

 private:
  Stage& wrapped_;
  BreakerStateMachine machine_;
  std::uint64_t shortCircuited_ = 0;
};

}  // namespace stagesim
