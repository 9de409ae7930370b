#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "stagesim/clock.hpp"

namespace stagesim {

using Rng = std::mt19937_64;

/// One seed, many independent named substreams. Each stream's seed is derived
/// from (run seed, stream name) only, so adding draws to one stream never
/// shifts another.
class RandomStreams {
 public:
  explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  Rng& stream(std::string_view name);

  static std::uint64_t deriveSeed(std::uint64_t seed, std::string_view name);

 private:
  std::uint64_t seed_;
  std::map<std::string, Rng, std::less<>> streams_;
};

/// Well-known stream names used by the bundled stages and the scenario.
namespace streams {
inline constexpr std::string_view kKeyspace = "keyspace";
inline constexpr std::string_view kLatency = "latency";
inline constexpr std::string_view kAvailability = "availability";
}  // namespace streams

/// round(N(mean, stddev)), clamped at zero. stddev == 0 returns round(mean).
std::int64_t sampleKey(Rng& rng, double mean, double stddev);

/// Exponentially distributed duration with the given mean, rounded half-up to
/// whole ticks.
Tick sampleExponential(Rng& rng, double mean);

/// True with probability `p`.
bool sampleBernoulli(Rng& rng, double p);

}  // namespace stagesim
