#pragma once

#include <list>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "stagesim/stage.hpp"

namespace stagesim {

enum class CacheMode { kReadThrough, kBackgroundRefresh };

struct CacheConfig {
  CacheMode mode = CacheMode::kReadThrough;
  std::size_t capacity = 1000;  // max keys, least-recently-used evicted
  std::optional<Tick> ttl;      // entries older than this are stale
};

/// Key-addressed cache in front of a wrapped stage.
///
/// Read-through: a fresh hit succeeds with no added ticks; a miss (or stale
/// entry) goes to the wrapped stage and is stored on success.
/// Background refresh: any hit succeeds immediately; a stale hit also starts
/// a detached refresh of that key that the caller does not wait for.
class Cache : public Stage {
 public:
  /// Throws std::invalid_argument for capacity == 0 or ttl < 0.
  Cache(Simulation& sim, std::string name, Stage& wrapped, CacheConfig config);

  const CacheConfig& config() const noexcept { return config_; }
  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }
  std::uint64_t refreshes() const noexcept { return refreshes_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::int64_t key) const { return entries_.contains(key); }

  std::string kind() const override { return "cache"; }
  StageParameters parameters() const override;
  std::vector<const Stage*> children() const override { return {&wrapped_}; }

 protected:
  Task<void> workOn(Event& event) override;

 private:
  struct Entry {
    Tick storedAt;
    std::list<std::int64_t>::iterator position;
  };

  bool stale(const Entry& entry) const;
  void touch(Entry& entry);
  void store(std::int64_t key);
  Task<void> refresh(std::int64_t key);

  Stage& wrapped_;
  CacheConfig config_;
  std::list<std::int64_t> recency_;  // front = most recently used
  std::unordered_map<std::int64_t, Entry> entries_;
  std::unordered_set<std::int64_t> refreshing_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
  std::uint64_t refreshes_ = 0;
  std::uint64_t nextRefreshId_ = 0;
};

}  // namespace stagesim
