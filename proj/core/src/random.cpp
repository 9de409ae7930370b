#include "stagesim/random.hpp"

#include <cmath>
#include <stdexcept>

namespace stagesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::uint64_t RandomStreams::deriveSeed(std::uint64_t seed,
                                        std::string_view name) {
  return splitmix64(splitmix64(seed) ^ fnv1a(name));
}

Rng& RandomStreams::stream(std::string_view name) {
  auto it = streams_.find(name);
  if (it == streams_.end()) {
    it = streams_.emplace(std::string(name), Rng{deriveSeed(seed_, name)})
             .first;
  }
  return it->second;
}

std::int64_t sampleKey(Rng& rng, double mean, double stddev) {
  if (stddev < 0.0) throw std::invalid_argument("keyspace stddev must be >= 0");
  double value = mean;
  if (stddev > 0.0) value = std::normal_distribution<double>(mean, stddev)(rng);
  const double rounded = std::floor(value + 0.5);
  return rounded < 0.0 ? 0 : static_cast<std::int64_t>(rounded);
}

Tick sampleExponential(Rng& rng, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be > 0");
  return roundToTick(std::exponential_distribution<double>(1.0 / mean)(rng));
}

bool sampleBernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace stagesim
