#include "stagesim/simulation.hpp"

#include <coroutine>
#include <vector>

namespace stagesim {

struct Simulation::Detached {
  struct promise_type {
    Simulation* sim;

    promise_type(Simulation& owner, Task<void>&) : sim(&owner) {}
    ~promise_type() {
      sim->roots_.erase(
          std::coroutine_handle<promise_type>::from_promise(*this).address());
    }

    Detached get_return_object() {
      sim->roots_.insert(
          std::coroutine_handle<promise_type>::from_promise(*this).address());
      return {};
    }
    std::suspend_never initial_suspend() const noexcept { return {}; }
    std::suspend_never final_suspend() const noexcept { return {}; }
    void return_void() const noexcept {}
    void unhandled_exception() noexcept {
      if (!sim->failure_) sim->failure_ = std::current_exception();
    }
  };
};

Simulation::Detached Simulation::runDetached(Simulation&, Task<void> activity) {
  co_await std::move(activity);
}

Simulation::Simulation(std::uint64_t seed) : random_(seed) {}

Simulation::~Simulation() { shutdown(); }

void Simulation::record(std::string_view name, Fields fields) {
  metrics_.record(clock_.now(), name, std::move(fields));
}

void Simulation::spawn(Task<void> activity) {
  runDetached(*this, std::move(activity));
}

void Simulation::rethrowIfFailed() const {
  if (failure_) std::rethrow_exception(failure_);
}

void Simulation::shutdown() {
  clock_.clear();
  const std::vector<void*> live(roots_.begin(), roots_.end());
  for (void* address : live) {
    if (roots_.contains(address)) {
      std::coroutine_handle<>::from_address(address).destroy();
    }
  }
}

}  // namespace stagesim
