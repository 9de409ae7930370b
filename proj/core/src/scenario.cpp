#include "stagesim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stagesim/metrics.hpp"
#include "stagesim/stage.hpp"

namespace stagesim {

void ScenarioConfig::validate() const {
  if (!(eventsPer1000Ticks > 0.0)) throw std::invalid_argument("eventsPer1000Ticks must be > 0");
  if (!(keyspaceStd >= 0.0)) throw std::invalid_argument("keyspaceStd must be >= 0");
  if (totalEvents < 1) throw std::invalid_argument("totalEvents must be >= 1");
  for (const RateRule& rule : rateSchedule) {
    if (rule.when == RateRule::When::kEvery && rule.ticks < 1) {
      throw std::invalid_argument("rate rule period must be >= 1 tick");
    }
    if (rule.when == RateRule::When::kAt && rule.ticks < 0) {
      throw std::invalid_argument("rate rule tick must be >= 0");
    }
    if (rule.op == RateRule::Op::kSet && !(rule.value > 0.0)) {
      throw std::invalid_argument("rate rule must set a positive rate");
    }
  }
}

Scenario::Scenario(Simulation& sim, ScenarioConfig config)
    : sim_(sim),
      config_(std::move(config)),
      keyRng_(sim.rng(streams::kKeyspace)),
      rate_(config_.eventsPer1000Ticks) {
  config_.validate();
}

void Scenario::setRate(double eventsPer1000Ticks) {
  if (!(eventsPer1000Ticks > 0.0)) throw std::invalid_argument("arrival rate must be > 0");
  rate_ = eventsPer1000Ticks;
  if (entry_ != nullptr && result_.injected > 0 && result_.injected < config_.totalEvents) {
    scheduleNextArrival();
  }
}

std::int64_t Scenario::sampleKey() {
  return stagesim::sampleKey(keyRng_, config_.keyspaceMean, config_.keyspaceStd);
}

void Scenario::scheduleNextArrival() {
  ++generation_;
  const double next = lastArrival_ + 1000.0 / rate_;
  // Repeated addition of 1000/rate drifts just below whole ticks (3.9999...),
  // so floor with a small tolerance.
  const Tick due = static_cast<Tick>(std::floor(next + 1e-9));
  const Tick delay = due > sim_.now() ? due - sim_.now() : 0;
  const std::uint64_t generation = generation_;
  sim_.clock().schedule(delay, [this, next, generation] {
    // A rate change since scheduling re-spaced this arrival.
    if (generation != generation_) return;
    lastArrival_ = next;
    inject(*entry_);
  });
}

void Scenario::inject(Stage& entry) {
  Event& event = events_.emplace_back();
  event.id = result_.injected;
  event.key = sampleKey();
  event.createdAt = sim_.now();
  ++result_.injected;
  result_.lastArrivalTick = sim_.now();
  if (result_.injected < config_.totalEvents) scheduleNextArrival();
  sim_.spawn(deliver(entry, event));
}

Task<void> Scenario::deliver(Stage& entry, Event& event) {
  const Response response = co_await entry.add(event);
  double status = 0.0;
  switch (response.outcome) {
    case Outcome::kSuccess:
      ++result_.succeeded;
      status = 0.0;
      break;
    case Outcome::kFail:
      ++result_.failed;
      status = 1.0;
      break;
    case Outcome::kRejected:
      ++result_.rejected;
      status = 2.0;
      break;
  }
  Fields fields{{std::string(series::kStatus), status},
                {std::string(series::kLatency), static_cast<double>(response.latency)}};
  if (event.admittedAt && event.dequeuedAt) {
    fields.emplace_back(std::string(series::kQueueWait),
                        static_cast<double>(*event.dequeuedAt - *event.admittedAt));
  }
  sim_.record(series::kEvent, std::move(fields));
  if (result_.completed() == config_.totalEvents) result_.drainTick = sim_.now();
}

RunResult Scenario::run(Stage& entry, const RunOptions& options) {
  if (entry_ != nullptr) throw std::logic_error("a scenario runs once");
  if (sim_.activeActivities() != 0 || !sim_.clock().idle()) {
    throw std::logic_error("scenario started on a busy simulation");
  }
  entry_ = &entry;
  Clock& clock = sim_.clock();
  result_.startTick = clock.now();
  lastArrival_ = static_cast<double>(result_.startTick);

  for (const RateRule& rule : config_.rateSchedule) {
    auto apply = [this, rule] {
      setRate(rule.op == RateRule::Op::kAdd ? rate_ + rule.value : rule.value);
    };
    if (rule.when == RateRule::When::kEvery) {
      clock.setInterval(apply, rule.ticks);
    } else {
      clock.schedule(std::max<Tick>(0, rule.ticks - clock.now()), apply);
    }
  }
  if (options.pollPeriod > 0) pollQueueDepth(sim_, entry, options.pollPeriod);

  // The first event arrives at the start tick.
  ++generation_;
  clock.schedule(0, [this] { inject(*entry_); });

  const Tick budgetEnd = result_.startTick + options.maxTicks;
  auto checkBudget = [&](Tick tick) {
    if (tick > budgetEnd) {
      RunResult partial = result_;
      sim_.shutdown();
      throw RunAborted("tick budget of " + std::to_string(options.maxTicks) +
                           " exhausted with " +
                           std::to_string(partial.injected - partial.completed()) +
                           " events in flight",
                       partial);
    }
  };

  while (result_.completed() < config_.totalEvents || sim_.activeActivities() > 0) {
    const auto tick = clock.advance();
    sim_.rethrowIfFailed();
    if (!tick) {
      throw std::logic_error("simulation stalled: " + std::to_string(sim_.activeActivities()) +
                             " activities suspended with nothing scheduled");
    }
    checkBudget(*tick);
  }

  clock.cancelAllIntervals();
  while (const auto tick = clock.advance()) {
    sim_.rethrowIfFailed();
    checkBudget(*tick);
  }
  result_.drained = true;
  return result_;
}

}  // namespace stagesim
