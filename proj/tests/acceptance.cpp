// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "stagesim/model.hpp"
#include "stagesim/models/circleci.hpp"
#include "stagesim/random.hpp"
#include "stagesim/scenario.hpp"
#include "stagesim/simulation.hpp"
#include "stagesim/stages/circuit_breaker.hpp"
#include "stagesim/stages/retry.hpp"
#include "stagesim/stages/service_stage.hpp"
#include "stagesim/stages/timeout.hpp"
#include "stagesim/summary.hpp"
#include "support.hpp"

namespace {

using namespace stagesim;
using testing::Delivery;
using testing::makeEvent;
using testing::runToIdle;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int number, const char* title, const std::function<void(Check&)>& body) {
  Check check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail << " [exception: " << e.what() << "]";
  }
  if (!check.ok) ++failures;
  std::printf("%s %2d %s:%s\n", check.ok ? "PASS" : "FAIL", number, title, check.detail.str().c_str());
  std::fflush(stdout);
}

struct SurgeRun {
  RunResult run;
  SummaryReport summary;
  double queueAt1000 = -1;
  std::string summaryJson;
  std::string records;
  double seconds = 0;
};

SurgeRun surge(const std::string& model, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  Simulation sim(seed);
  Model built = buildRegisteredModel(sim, model, seed);
  Scenario scenario(sim, built.scenario);
  SurgeRun out;
  out.run = scenario.run(*built.entry);
  out.summary = summarize(sim.metrics(), out.run);
  for (const SamplePoint& p : sim.metrics().series(series::kPoll)) {
    if (p.tick == 1000) out.queueAt1000 = p.get(series::kQueueSize).value_or(-1);
  }
  out.summaryJson = toJson(out.summary);
  std::ostringstream records;
  writeRecords(records, sim.metrics(), out.run, out.summary);
  out.records = records.str();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

Task<void> deliverAt(Simulation& sim, Tick at, Stage& stage, Event& event, Delivery& out) {
  co_await sim.wait(at);
  event.createdAt = sim.now();
  out.response = co_await stage.add(event);
  out.resolvedAt = sim.now();
}

}  // namespace

int main() {
  const std::vector<std::string> models = registeredModels();
  std::map<std::string, SurgeRun> seed1;
  for (const auto& name : models) seed1[name] = surge(name, 1);
  const SurgeRun& original = seed1.at("circleci:original");
  const SurgeRun& a = seed1.at("circleci:a");
  const SurgeRun& b = seed1.at("circleci:b");
  const SurgeRun& c = seed1.at("circleci:c");

  report(1, "conservation at drain, every bundled model, seeds 1-3", [&](Check& check) {
    for (std::uint64_t seed : {1, 2, 3}) {
      for (const auto& name : models) {
        const RunResult run = seed == 1 ? seed1.at(name).run : surge(name, seed).run;
        check.expect(run.drained && run.injected == 50'000 &&
                         run.injected == run.rejected + run.succeeded + run.failed,
                     name + " seed " + std::to_string(seed));
      }
    }
    check.detail << " 12 runs";
  });

  report(2, "determinism of summaries and sample streams", [&](Check& check) {
    const SurgeRun again = surge("circleci:original", 1);
    check.expect(again.summaryJson == original.summaryJson, "summary bytes differ");
    check.expect(again.records == original.records, "sample stream bytes differ");
    check.detail << " summary " << original.summaryJson.size() << " B, samples "
                 << original.records.size() << " B";
  });

  report(3, "original surge signature", [&](Check& check) {
    const auto& s = original.summary;
    check.expect(s.rejectionRate == 0.0, "rejection rate is not 0");
    check.expect(original.queueAt1000 >= 0, "no queue sample at tick 1000");
    check.expect(s.maxQueueSize >= 5 * original.queueAt1000, "max queue < 5x queue at tick 1000");
    check.expect(s.availability > 0.5 && s.availability < 1.0, "availability outside (50%, 100%)");
    check.expect(original.seconds < 120, "run took over 2 minutes");
    check.detail << " availability " << formatSig4(s.availability * 100) << "%, max queue "
                 << s.maxQueueSize << " vs " << original.queueAt1000 << " at tick 1000, "
                 << formatSig4(original.seconds) << " s";
  });

  report(4, "model A bounded queue", [&](Check& check) {
    const auto& s = a.summary;
    check.expect(s.maxQueueSize == 10'000, "max queue is not 10000");
    check.expect(s.rejectionRate > 0.5, "rejection rate <= 50%");
    check.expect(a.run.rejected + a.run.succeeded + a.run.failed == a.run.injected, "counts do not partition");
    check.expect(std::fabs(s.availability + s.rejectionRate + s.failRate - 1.0) < 1e-12, "rates do not sum to 1");
    check.expect(s.recoveryTime < original.summary.recoveryTime, "recovery(A) >= recovery(original)");
    check.detail << " rejection " << formatSig4(s.rejectionRate * 100) << "%, recovery "
                 << s.recoveryTime << " < " << original.summary.recoveryTime;
  });

  report(5, "model B limited workers", [&](Check& check) {
    const auto& s = b.summary;
    check.expect(s.rejectionRate == 0.0, "rejection rate is not 0");
    check.expect(s.availability == 1.0, "availability is not 100%");
    check.expect(s.recoveryTime < a.summary.recoveryTime &&
                     a.summary.recoveryTime < original.summary.recoveryTime,
                 "recovery ordering B < A < original");
    check.expect(s.meanQueueWait < original.summary.meanQueueWait, "queue wait(B) >= original");
    check.detail << " recovery " << s.recoveryTime << " < " << a.summary.recoveryTime << " < "
                 << original.summary.recoveryTime << ", queue wait " << formatSig4(s.meanQueueWait)
                 << " < " << formatSig4(original.summary.meanQueueWait);
  });

  report(6, "model C without retry", [&](Check& check) {
    const auto& s = c.summary;
    check.expect(s.availability < original.summary.availability, "availability(C) >= original");
    check.expect(s.meanQueueWait < original.summary.meanQueueWait, "queue wait(C) >= original");
    check.detail << " availability " << formatSig4(s.availability * 100) << "% < "
                 << formatSig4(original.summary.availability * 100) << "%, queue wait "
                 << formatSig4(s.meanQueueWait) << " < " << formatSig4(original.summary.meanQueueWait);
  });

  report(7, "database failures and latency at low load", [&](Check& check) {
    Simulation sim(1);
    models::Database db(sim, "database", models::DatabaseConfig{});
    Scenario scenario(sim, ScenarioConfig{.eventsPer1000Ticks = 1000, .totalEvents = 100'000});
    scenario.run(db);
    const auto& stats = db.stats();
    double sum = 0;
    for (Tick t : stats.latencies) sum += static_cast<double>(t);
    const double mean = sum / static_cast<double>(stats.latencies.size());
    check.expect(stats.rejected == 0, "database rejected events at low load");
    check.expect(stats.fail >= 35 && stats.fail <= 65, "failures outside 50 +/- 15");
    check.expect(std::fabs(mean - 30.0) <= 0.02 * 30.0, "mean latency outside 30 +/- 2%");
    check.detail << " failures " << stats.fail << ", mean latency " << formatSig4(mean);
  });

  report(8, "retry lifts availability to 1 - 0.5^3", [&](Check& check) {
    Simulation sim(8);
    ServiceStage coin(sim, "coin", ServiceConfig{.latency = LatencyModel::fixed(1), .availability = 0.5});
    Retry retry(sim, "retry", coin, RetryConfig{.attempts = 3});
    Scenario scenario(sim, ScenarioConfig{.eventsPer1000Ticks = 1000, .totalEvents = 10'000});
    const RunResult run = scenario.run(retry);
    const double availability = summarize(sim.metrics(), run).availability;
    check.expect(std::fabs(availability - 0.875) <= 0.02, "availability outside 0.875 +/- 0.02");
    check.expect(coin.stats().added <= 3 * run.injected && coin.stats().added >= run.injected,
                 "wrapped call count outside [1, 3] per event");
    check.detail << " availability " << formatSig4(availability);
  });

  report(9, "two workers, latency 10, three arrivals", [&](Check& check) {
    Simulation sim;
    testing::ScriptedStage stage(sim, "s", 10, FifoQueue(FifoQueue::kUnbounded, 2));
    std::deque<Event> events;
    std::deque<Delivery> outs(3);
    for (std::uint64_t i = 0; i < 3; ++i) {
      events.push_back(makeEvent(i));
      sim.spawn(deliverAt(sim, 0, stage, events.back(), outs[i]));
    }
    runToIdle(sim);
    std::vector<Tick> done;
    for (const auto& o : outs) done.push_back(o.resolvedAt);
    check.expect(done == std::vector<Tick>{10, 10, 20}, "completions are not +10, +10, +20");
    check.detail << " completions " << done[0] << ", " << done[1] << ", " << done[2];
  });

  report(10, "timeout failures never exceed the deadline", [&](Check& check) {
    std::mt19937_64 rng(10);
    std::uint64_t timedOut = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const Tick deadline = 1 + static_cast<Tick>(rng() % 100);
      const double mean = 1.0 + static_cast<double>(rng() % 120);
      const bool exponential = rng() % 2 == 0;
      Simulation sim(trial + 1);
      ServiceStage wrapped(sim, "wrapped",
                           ServiceConfig{.latency = exponential ? LatencyModel::exponential(mean)
                                                                : LatencyModel::fixed(mean),
                                         .availability = 0.95,
                                         .workers = 1 + rng() % 16});
      Timeout timeout(sim, "timeout", wrapped, TimeoutConfig{deadline});
      std::deque<Event> events;
      std::deque<Delivery> outs(200);
      for (std::uint64_t i = 0; i < 200; ++i) {
        events.push_back(makeEvent(i));
        sim.spawn(deliverAt(sim, static_cast<Tick>(rng() % 500), timeout, events.back(), outs[i]));
      }
      runToIdle(sim);
      for (const Delivery& out : outs) {
        if (!out.response->ok()) {
          check.expect(out.response->latency <= deadline, "latency above deadline");
        }
      }
      timedOut += timeout.timeouts();
    }
    check.expect(timedOut > 0, "no trial exercised a timeout");
    check.detail << " 100 trials, " << timedOut << " timeouts";
  });

  report(11, "circuit breaker transitions over window 10", [&](Check& check) {
    const std::set<std::pair<BreakerState, BreakerState>> legal{
        {BreakerState::kClosed, BreakerState::kOpen},
        {BreakerState::kOpen, BreakerState::kHalfOpen},
        {BreakerState::kHalfOpen, BreakerState::kClosed},
        {BreakerState::kHalfOpen, BreakerState::kOpen}};
    constexpr int kLength = 16;
    constexpr Tick kCooldown = 250;
    std::uint64_t trips = 0;
    for (std::uint32_t bits = 0; bits < (1u << kLength) && check.ok; ++bits) {
      BreakerStateMachine breaker(BreakerConfig{.windowSize = 10, .failureThreshold = 0.5, .cooldown = kCooldown});
      // Independent reference: a plain list of the last ten outcomes.
      BreakerState state = BreakerState::kClosed;
      std::vector<bool> recent;
      Tick openedAt = 0;
      for (int i = 0; i < kLength; ++i) {
        const Tick now = i * 100;
        const bool success = (bits >> i & 1u) == 0;
        bool expectForward = true;
        if (state == BreakerState::kOpen) {
          if (now < openedAt + kCooldown) {
            expectForward = false;
          } else {
            state = success ? BreakerState::kClosed : BreakerState::kOpen;
            openedAt = success ? openedAt : now;
            recent.clear();
          }
        } else {
          recent.push_back(!success);
          if (recent.size() > 10) recent.erase(recent.begin());
          if (recent.size() == 10 && std::count(recent.begin(), recent.end(), true) >= 5) {
            state = BreakerState::kOpen;
            openedAt = now;
            recent.clear();
          }
        }
        const auto ticket = breaker.admit(now);
        const bool forwarded = ticket.admission != BreakerStateMachine::Admission::kReject;
        if (forwarded) breaker.record(ticket, success, now);
        if (forwarded != expectForward || breaker.state() != state) {
          check.expect(false, "diverged from reference at sequence " + std::to_string(bits));
          break;
        }
      }
      for (const auto& t : breaker.transitions()) {
        if (!legal.contains({t.from, t.to})) check.expect(false, "illegal transition");
        if (t.to == BreakerState::kOpen) ++trips;
      }
    }
    check.detail << " " << (1u << kLength) << " sequences, " << trips << " trips";
  });

  report(12, "rate fidelity and keyspace moments", [&](Check& check) {
    Simulation sim(1);
    testing::ScriptedStage sink(sim, "sink", 0);
    Scenario scenario(sim, ScenarioConfig{.eventsPer1000Ticks = 1500, .totalEvents = 16'000});
    scenario.run(sink);
    std::uint64_t inWindow = 0;
    for (const Event& e : scenario.events()) inWindow += e.createdAt < 10'000 ? 1 : 0;
    check.expect(inWindow >= 14'985 && inWindow <= 15'015, "injected outside 15000 +/- 15");

    Rng rng(RandomStreams::deriveSeed(1, streams::kKeyspace));
    double sum = 0, sumSq = 0;
    bool negative = false;
    for (int i = 0; i < 100'000; ++i) {
      const double key = static_cast<double>(sampleKey(rng, 1000, 200));
      sum += key;
      sumSq += key * key;
    }
    Rng clampRng(2);
    for (int i = 0; i < 100'000; ++i) negative = negative || sampleKey(clampRng, 0, 200) < 0;
    const double mean = sum / 1e5;
    const double stddev = std::sqrt(sumSq / 1e5 - mean * mean);
    Rng flat(3);
    bool constant = true;
    for (int i = 0; i < 1000; ++i) constant = constant && sampleKey(flat, 1000, 0) == 1000;
    check.expect(std::fabs(mean - 1000) <= 2, "key mean outside 1000 +/- 2");
    check.expect(std::fabs(stddev - 200) <= 2, "key std outside 200 +/- 2");
    check.expect(!negative, "negative key sampled");
    check.expect(constant, "std 0 keyspace not constant");
    check.detail << " " << inWindow << " events in 10000 ticks, key mean " << formatSig4(mean)
                 << ", std " << formatSig4(stddev);
  });

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
