#pragma once

#include <coroutine>
#include <cstddef>
#include <deque>
#include <limits>

#include "stagesim/clock.hpp"

namespace stagesim {

/// A worker pool fronted by a FIFO waiting line.
///
/// `capacity` bounds the waiting line only; events being worked on do not
/// count against it. `workers` bounds concurrent workOn executions.
class FifoQueue {
 public:
  static constexpr std::size_t kUnbounded =
      std::numeric_limits<std::size_t>::max();

  FifoQueue() = default;
  /// Throws std::invalid_argument when workers == 0.
  FifoQueue(std::size_t capacity, std::size_t workers);

  static FifoQueue unbounded() { return FifoQueue{}; }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t workers() const noexcept { return workers_; }
  std::size_t busyWorkers() const noexcept { return busy_; }
  std::size_t length() const noexcept { return waiting_.size(); }
  std::size_t highWater() const noexcept { return highWater_; }
  bool bounded() const noexcept { return capacity_ != kUnbounded; }

  bool hasFreeWorker() const noexcept { return busy_ < workers_; }
  /// Default admission rule: a free worker or spare waiting room.
  bool hasRoom() const noexcept {
    return hasFreeWorker() || waiting_.size() < capacity_;
  }

  struct AcquireAwaiter {
    FifoQueue& queue;
    bool await_ready() noexcept { return queue.tryTakeWorker(); }
    void await_suspend(std::coroutine_handle<> h) { queue.enqueue(h); }
    void await_resume() const noexcept {}
  };

  /// Resumes once a worker has been assigned to the caller. The caller must
  /// have been admitted (hasRoom() was true) before awaiting.
  AcquireAwaiter acquire() noexcept { return AcquireAwaiter{*this}; }

  /// Frees the caller's worker. If someone is waiting, the worker passes
  /// straight to the head of the line, which resumes later in this tick.
  void release(Clock& clock);

 private:
  bool tryTakeWorker() noexcept;
  void enqueue(std::coroutine_handle<> h);

  std::size_t capacity_ = kUnbounded;
  std::size_t workers_ = kUnbounded;
  std::size_t busy_ = 0;
  std::size_t highWater_ = 0;
  std::deque<std::coroutine_handle<>> waiting_;
};

}  // namespace stagesim
