#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stagesim/simulation.hpp"
#include "stagesim/stage.hpp"

namespace stagesim::testing {

// Waits a fixed latency, then fails when `failWhen` says so.
class ScriptedStage : public Stage {
 public:
  ScriptedStage(Simulation& sim, std::string name, Tick latency, FifoQueue queue = {})
      : Stage(sim, std::move(name), queue), latency_(latency) {}

  std::function<bool(const Event&)> failWhen;
  std::vector<Tick> startedAt;
  std::vector<std::uint64_t> startedIds;
  std::vector<std::uint64_t> admittedIds;

  std::string kind() const override { return "scripted"; }

 protected:
  bool admit(const Event& event) override {
    const bool ok = Stage::admit(event);
    if (ok) admittedIds.push_back(event.id);
    return ok;
  }

  Task<void> workOn(Event& event) override {
    startedAt.push_back(now());
    startedIds.push_back(event.id);
    co_await sim().wait(latency_);
    if (failWhen && failWhen(event)) throw Failure("scripted failure");
  }

 private:
  Tick latency_;
};

struct Delivery {
  std::optional<Response> response;
  Tick resolvedAt = -1;
};

inline Task<void> deliver(Simulation& sim, Stage& stage, Event& event, Delivery& out) {
  out.response = co_await stage.add(event);
  out.resolvedAt = sim.now();
}

// Runs the clock until nothing is pending and surfaces activity errors.
inline void runToIdle(Simulation& sim) {
  while (sim.clock().advance()) {
  }
  sim.rethrowIfFailed();
}

inline Event makeEvent(std::uint64_t id, Tick createdAt = 0, std::int64_t key = 0) {
  Event event;
  event.id = id;
  event.key = key;
  event.createdAt = createdAt;
  return event;
}

}  // namespace stagesim::testing
