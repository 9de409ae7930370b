#include "stagesim/fifo_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace stagesim {

FifoQueue::FifoQueue(std::size_t capacity, std::size_t workers)
    : capacity_(capacity), workers_(workers) {
  if (workers == 0) throw std::invalid_argument("queue needs at least one worker");
}

bool FifoQueue::tryTakeWorker() noexcept {
  if (!waiting_.empty() || busy_ >= workers_) return false;
  ++busy_;
  return true;
}

void FifoQueue::enqueue(std::coroutine_handle<> h) {
  if (waiting_.size() >= capacity_) {
    throw std::logic_error("enqueue on a full queue; admission was skipped");
  }
  waiting_.push_back(h);
  highWater_ = std::max(highWater_, waiting_.size());
}

void FifoQueue::release(Clock& clock) {
  if (busy_ == 0) throw std::logic_error("release without a busy worker");
  if (waiting_.empty()) {
    --busy_;
    return;
  }
  const auto next = waiting_.front();
  waiting_.pop_front();
  clock.resumeAfter(0, next);
}

}  // namespace stagesim
