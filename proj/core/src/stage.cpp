#include "stagesim/stage.hpp"

#include <functional>
#include <sstream>

namespace stagesim {

namespace {

std::string formatCount(std::size_t n) {
  return n == FifoQueue::kUnbounded ? std::string("unbounded") : std::to_string(n);
}

}  // namespace

std::string_view toString(EventStatus status) {
  switch (status) {
    case EventStatus::kPending: return "pending";
    case EventStatus::kSuccess: return "success";
    case EventStatus::kFail: return "fail";
    case EventStatus::kRejected: return "rejected";
  }
  return "unknown";
}

std::string_view toString(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess: return "success";
    case Outcome::kFail: return "fail";
    case Outcome::kRejected: return "rejected";
  }
  return "unknown";
}

void Event::finish(EventStatus terminal, Tick at) {
  if (terminal == EventStatus::kPending) {
    throw std::logic_error("pending is not a terminal status");
  }
  if (this->terminal()) {
    throw std::logic_error("event " + std::to_string(id) + " already finished");
  }
  status = terminal;
  completedAt = at;
}

Stage::Stage(Simulation& sim, std::string name, FifoQueue queue)
    : sim_(sim), name_(std::move(name)), queue_(std::move(queue)) {
  if (sim_.metrics().findStage(name_) != nullptr) {
    throw std::invalid_argument("duplicate stage name: " + name_);
  }
  stats_ = &sim_.metrics().stage(name_);
}

StageParameters Stage::parameters() const {
  return {{"capacity", formatCount(queue_.capacity())},
          {"workers", formatCount(queue_.workers())}};
}

bool Stage::admit(const Event&) { return queue_.hasRoom(); }
void Stage::onSuccess(const Event&, Tick) {}
void Stage::onFailure(const Event&, Tick) {}
void Stage::onRejected(const Event&) {}

Task<Response> Stage::add(Event& event) {
  const Tick start = clock().now();
  ++stats_->added;
  if (!admit(event)) {
    ++stats_->rejected;
    if (event.owner == nullptr) event.finish(EventStatus::kRejected, start);
    onRejected(event);
    co_return Response{Outcome::kRejected, 0};
  }

  const bool owns = event.owner == nullptr;
  if (owns) {
    event.owner = this;
    event.admittedAt = start;
  }
  co_await queue_.acquire();
  if (owns) event.dequeuedAt = clock().now();

  bool ok = true;
  try {
    co_await workOn(event);
  } catch (const Failure&) {
    ok = false;
  }
  queue_.release(clock());

  const Tick done = clock().now();
  const Tick latency = done - start;
  stats_->latencies.push_back(latency);
  if (ok) {
    ++stats_->success;
    onSuccess(event, latency);
  } else {
    ++stats_->fail;
    onFailure(event, latency);
  }
  if (owns) event.finish(ok ? EventStatus::kSuccess : EventStatus::kFail, done);
  co_return Response{ok ? Outcome::kSuccess : Outcome::kFail, latency};
}

Task<void> Stage::forward(Stage& next, Event& event) {
  const Response response = co_await next.add(event);
  if (!response.ok()) {
    throw Failure(next.name() + ": " + std::string(toString(response.outcome)));
  }
}

std::vector<std::string> describeGraph(const Stage& entry) {
  std::vector<std::string> lines;
  std::function<void(const Stage&, int)> visit = [&](const Stage& stage, int depth) {
    std::ostringstream line;
    line << depth << ' ' << stage.name() << " kind=" << stage.kind();
    for (const auto& [key, value] : stage.parameters()) {
      line << ' ' << key << '=' << value;
    }
    lines.push_back(line.str());
    for (const Stage* child : stage.children()) visit(*child, depth + 1);
  };
  visit(entry, 0);
  return lines;
}

}  // namespace stagesim
