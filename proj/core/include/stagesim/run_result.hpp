#pragma once

#include <cstdint>

#include "stagesim/clock.hpp"

namespace stagesim {

/// Entry-stage ledger for one scenario run.
struct RunResult {
  std::uint64_t injected = 0;
  std::uint64_t rejected = 0;
  std::uint64_t succeeded = 0;
  std::uint64_t failed = 0;
  Tick startTick = 0;
  Tick lastArrivalTick = 0;
  Tick drainTick = 0;
  bool drained = false;

  std::uint64_t completed() const noexcept {
    return rejected + succeeded + failed;
  }

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

}  // namespace stagesim
