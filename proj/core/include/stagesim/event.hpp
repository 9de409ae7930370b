#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "stagesim/clock.hpp"

namespace stagesim {

class Stage;

enum class EventStatus : std::uint8_t { kPending, kSuccess, kFail, kRejected };

std::string_view toString(EventStatus status);

/// A unit of work flowing through stages.
///
/// Timestamps belong to the entry stage: the first stage that admits the
/// event becomes its owner and is the only one that stamps admittedAt,
/// dequeuedAt, completedAt and the terminal status. Downstream stages only
/// contribute aggregate counters and latency samples.
struct Event {
  std::uint64_t id = 0;
  std::int64_t key = 0;
  Tick createdAt = 0;
  std::optional<Tick> admittedAt;
  std::optional<Tick> dequeuedAt;
  std::optional<Tick> completedAt;
  EventStatus status = EventStatus::kPending;
  const Stage* owner = nullptr;

  bool terminal() const noexcept { return status != EventStatus::kPending; }

  /// Moves to a terminal status. Throws std::logic_error if already terminal.
  void finish(EventStatus terminal, Tick at);
};

enum class Outcome : std::uint8_t { kSuccess, kFail, kRejected };

std::string_view toString(Outcome outcome);

/// What a caller of Stage::add() observes.
struct Response {
  Outcome outcome = Outcome::kSuccess;
  Tick latency = 0;  // completion tick minus the tick add() was called

  bool ok() const noexcept { return outcome == Outcome::kSuccess; }
};

}  // namespace stagesim
