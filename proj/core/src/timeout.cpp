#include "stagesim/stages/timeout.hpp"

#include <memory>

namespace stagesim {

struct Timeout::Race {
  explicit Race(Clock& c) : clock(c) {}

  Clock& clock;
  bool done = false;
  bool ok = false;
  bool timedOut = false;
  std::coroutine_handle<> waiter;

  void wake() {
    if (waiter) clock.resumeAfter(0, std::exchange(waiter, {}));
  }

  struct Awaiter {
    Race& race;
    bool await_ready() const noexcept { return race.done || race.timedOut; }
    void await_suspend(std::coroutine_handle<> h) noexcept { race.waiter = h; }
    void await_resume() const noexcept {}
  };
};

Timeout::Timeout(Simulation& sim, std::string name, Stage& wrapped, TimeoutConfig config)
    : Stage(sim, std::move(name)), wrapped_(wrapped), config_(config) {
  if (config_.deadline < 1) throw std::invalid_argument("timeout deadline must be >= 1");
}

StageParameters Timeout::parameters() const {
  auto params = Stage::parameters();
  params["deadline"] = std::to_string(config_.deadline);
  return params;
}

Task<void> Timeout::runWrapped(Stage& wrapped, Event& event, std::shared_ptr<Race> race) {
  const Response response = co_await wrapped.add(event);
  race->done = true;
  race->ok = response.ok();
  if (!race->timedOut) race->wake();
}

Task<void> Timeout::workOn(Event& event) {
  auto race = std::make_shared<Race>(clock());
  sim().spawn(runWrapped(wrapped_, event, race));

  if (!race->done) {
    // The deadline check is deferred by one zero-delay hop so a wrapped
    // completion landing on the deadline tick itself still counts.
    Clock& clk = clock();
    const TimerId deadline = clk.schedule(config_.deadline, [race, &clk] {
      clk.schedule(0, [race] {
        if (race->done) return;
        race->timedOut = true;
        race->wake();
      });
    });
    co_await Race::Awaiter{*race};
    clk.cancel(deadline);
  }

  if (race->timedOut) {
    ++timeouts_;
    throw Failure(name() + ": deadline exceeded");
  }
  if (!race->ok) throw Failure(name() + ": " + wrapped_.name() + " failed");
}

}  // namespace stagesim
