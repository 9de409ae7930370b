#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stagesim/event.hpp"
#include "stagesim/fifo_queue.hpp"
#include "stagesim/metrics.hpp"
#include "stagesim/simulation.hpp"
#include "stagesim/task.hpp"

namespace stagesim {

/// Raised from workOn() to fail the event at this stage.
class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Key/value description of a stage's configuration, used for graph dumps
/// and for diffing model variants.
using StageParameters = std::map<std::string, std::string>;

/// A unit of event processing: admission, a FIFO waiting line with a worker
/// pool, and stage-specific work.
///
/// Authoring a stage means implementing workOn(). It is a coroutine, so it
/// may `co_await sim().wait(n)` or `co_await next.add(event)`, and it fails
/// the event by throwing Failure. Admission and the outcome hooks are
/// optional overrides.
class Stage {
 public:
  /// Throws std::invalid_argument if `name` is already used in `sim`.
  Stage(Simulation& sim, std::string name, FifoQueue queue = {});
  virtual ~Stage() = default;
  Stage(const Stage&) = delete;
  Stage& operator=(const Stage&) = delete;

  /// Offers `event` to this stage. Resolves once the event was rejected at
  /// admission, or after a worker ran workOn() to success or failure.
  Task<Response> add(Event& event);

  const std::string& name() const noexcept { return name_; }
  const FifoQueue& inQueue() const noexcept { return queue_; }
  FifoQueue& inQueue() noexcept { return queue_; }
  const StageStats& stats() const noexcept { return *stats_; }

  /// Stage kind for graph descriptions ("retry", "database", ...).
  virtual std::string kind() const = 0;
  virtual StageParameters parameters() const;
  /// Stages this one forwards events to.
  virtual std::vector<const Stage*> children() const { return {}; }

 protected:
  virtual bool admit(const Event& event);
  virtual Task<void> workOn(Event& event) = 0;
  virtual void onSuccess(const Event& event, Tick latency);
  virtual void onFailure(const Event& event, Tick latency);
  virtual void onRejected(const Event& event);

  /// Passes `event` to `next` and throws Failure unless it succeeded.
  static Task<void> forward(Stage& next, Event& event);

  Simulation& sim() noexcept { return sim_; }
  Clock& clock() noexcept { return sim_.clock(); }
  Tick now() const noexcept { return sim_.now(); }

 private:
  Simulation& sim_;
  std::string name_;
  FifoQueue queue_;
  StageStats* stats_;
};

/// One line per stage, depth-first from `entry`:
///   "<depth> <name> kind=<kind> k=v ..."
std::vector<std::string> describeGraph(const Stage& entry);

}  // namespace stagesim
