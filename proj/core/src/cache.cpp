#include "stagesim/stages/cache.hpp"

namespace stagesim {

Cache::Cache(Simulation& sim, std::string name, Stage& wrapped, CacheConfig config)
    : Stage(sim, std::move(name)), wrapped_(wrapped), config_(config) {
  if (config_.capacity == 0) throw std::invalid_argument("cache capacity must be >= 1");
  if (config_.ttl && *config_.ttl < 0) throw std::invalid_argument("cache ttl must be >= 0");
}

StageParameters Cache::parameters() const {
  auto params = Stage::parameters();
  params["mode"] = config_.mode == CacheMode::kReadThrough ? "read-through" : "background-refresh";
  params["cacheCapacity"] = std::to_string(config_.capacity);
  params["ttl"] = config_.ttl ? std::to_string(*config_.ttl) : "none";
  return params;
}

bool Cache::stale(const Entry& entry) const {
  return config_.ttl && now() - entry.storedAt > *config_.ttl;
}

void Cache::touch(Entry& entry) {
  recency_.splice(recency_.begin(), recency_, entry.position);
}

void Cache::store(std::int64_t key) {
  if (auto it = entries_.find(key); it != entries_.end()) {
    it->second.storedAt = clock().now();
    touch(it->second);
    return;
  }
  if (entries_.size() >= config_.capacity) {
    entries_.erase(recency_.back());
    recency_.pop_back();
  }
  recency_.push_front(key);
  entries_.emplace(key, Entry{clock().now(), recency_.begin()});
}

Task<void> Cache::workOn(Event& event) {
  const std::int64_t key = event.key;
  if (auto it = entries_.find(key); it != entries_.end()) {
    Entry& entry = it->second;
    if (config_.mode == CacheMode::kBackgroundRefresh) {
      ++hits_;
      touch(entry);
      if (stale(entry) && refreshing_.insert(key).second) {
        ++refreshes_;
        sim().spawn(refresh(key));
      }
      co_return;
    }
    if (!stale(entry)) {
      ++hits_;
      touch(entry);
      co_return;
    }
    recency_.erase(entry.position);
    entries_.erase(it);
  }

  ++misses_;
  co_await forward(wrapped_, event);
  store(key);
}

Task<void> Cache::refresh(std::int64_t key) {
  Event event;
  event.id = nextRefreshId_++;
  event.key = key;
  event.createdAt = clock().now();
  const Response response = co_await wrapped_.add(event);
  refreshing_.erase(key);
  if (response.ok()) store(key);
}

}  // namespace stagesim
