#include "stagesim/clock.hpp"

#include <cmath>
#include <stdexcept>

namespace stagesim {

Tick roundToTick(double duration) {
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("duration must be non-negative");
  }
  return static_cast<Tick>(std::floor(duration + 0.5));
}

void Clock::push(Tick fireAt, Phase phase, std::uint64_t timer,
                 std::coroutine_handle<> handle) {
  heap_.push(Entry{fireAt, phase, nextSeq_++, timer, handle});
  ++pending_;
}

void Clock::resumeAfter(Tick delay, std::coroutine_handle<> handle) {
  if (delay < 0) throw std::invalid_argument("wait duration must be >= 0");
  push(now_ + delay, Phase::kNormal, 0, handle);
}

Clock::WaitAwaiter Clock::wait(Tick duration) {
  if (duration < 0) throw std::invalid_argument("wait duration must be >= 0");
  return WaitAwaiter{*this, duration};
}

TimerId Clock::schedule(Tick delay, std::function<void()> action,
                        Phase phase) {
  if (delay < 0) throw std::invalid_argument("delay must be >= 0");
  const std::uint64_t id = nextTimer_++;
  timers_.emplace(id, Timer{std::move(action), 0, phase});
  push(now_ + delay, phase, id, {});
  return TimerId{id};
}

TimerId Clock::setInterval(std::function<void()> action, Tick period,
                           Phase phase) {
  if (period < 1) {
    throw std::invalid_argument("interval period must be >= 1 tick");
  }
  const std::uint64_t id = nextTimer_++;
  timers_.emplace(id, Timer{std::move(action), period, phase});
  push(now_ + period, phase, id, {});
  return TimerId{id};
}

void Clock::cancel(TimerId id) {
  if (timers_.erase(id.value) > 0) --pending_;
}

void Clock::cancelAllIntervals() {
  for (auto it = timers_.begin(); it != timers_.end();) {
    if (it->second.period > 0) {
      it = timers_.erase(it);
      --pending_;
    } else {
      ++it;
    }
  }
}

bool Clock::dropCancelledTop() {
  while (!heap_.empty()) {
    const Entry& top = heap_.top();
    if (top.timer == 0 || timers_.contains(top.timer)) return true;
    heap_.pop();
  }
  return false;
}

std::optional<Tick> Clock::advance() {
  if (!dropCancelledTop()) return std::nullopt;
  const Tick tick = heap_.top().fireAt;
  now_ = tick;
  while (dropCancelledTop() && heap_.top().fireAt == tick) {
    const Entry entry = heap_.top();
    heap_.pop();
    --pending_;
    ++executed_;
    if (entry.timer == 0) {
      entry.handle.resume();
      continue;
    }
    auto it = timers_.find(entry.timer);
    if (it->second.period > 0) {
      push(tick + it->second.period, it->second.phase, entry.timer, {});
      // Copy: the action may cancel its own timer, erasing the map node.
      auto action = it->second.action;
      action();
    } else {
      auto action = std::move(it->second.action);
      timers_.erase(it);
      action();
    }
  }
  return tick;
}

void Clock::clear() {
  heap_ = {};
  timers_.clear();
  pending_ = 0;
}

}  // namespace stagesim
