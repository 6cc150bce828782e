#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "synsetlink/clock.hpp"

namespace synsetlink {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;
  std::size_t size = 0;

  CacheStats& operator+=(const CacheStats& o) {
    hits += o.hits;
    misses += o.misses;
    evictions += o.evictions;
    size += o.size;
    return *this;
  }
  friend bool operator==(const CacheStats&, const CacheStats&) = default;
};

/// Thread-safe least-recently-used map with optional time-to-live. An
/// entry older than the ttl reads as a miss; ttl == 0 disables expiry.
/// Expired entries are dropped on access and do not count as evictions.
template <class Key, class Value, class Hash = std::hash<Key>>
class LruCache {
 public:
  using EvictionListener = std::function<void(const Key&)>;

  explicit LruCache(std::size_t capacity, std::chrono::seconds ttl = std::chrono::seconds{0},
                    std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>())
      : capacity_(capacity), ttl_(ttl), clock_(std::move(clock)) {
    if (capacity_ == 0) throw std::invalid_argument("cache capacity must be positive");
    if (ttl_.count() < 0) throw std::invalid_argument("cache ttl must be >= 0");
  }

  LruCache(const LruCache&) = delete;
  LruCache& operator=(const LruCache&) = delete;

  /// Called with the key of every capacity eviction, under the cache lock.
  void on_evict(EvictionListener listener) {
    std::lock_guard lock(mutex_);
    listener_ = std::move(listener);
  }

  std::optional<Value> get(const Key& key) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) {
      misses_.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
    if (expired(it->second->stored_at)) {
      order_.erase(it->second);
      index_.erase(it);
      misses_.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
    order_.splice(order_.begin(), order_, it->second);
    hits_.fetch_add(1, std::memory_order_relaxed);
    return it->second->value;
  }

  void put(const Key& key, Value value) {
    std::lock_guard lock(mutex_);
    auto now = clock_->now();
    if (auto it = index_.find(key); it != index_.end()) {
      it->second->value = std::move(value);
      it->second->stored_at = now;
      order_.splice(order_.begin(), order_, it->second);
      return;
    }
    if (order_.size() == capacity_) {
      auto& victim = order_.back();
      if (listener_) listener_(victim.key);
      index_.erase(victim.key);
      order_.pop_back();
      evictions_.fetch_add(1, std::memory_order_relaxed);
    }
    order_.push_front(Entry{key, std::move(value), now});
    index_.emplace(key, order_.begin());
  }

  /// Reads without touching recency or counters; expired entries read as absent.
  [[nodiscard]] std::optional<Value> peek(const Key& key) const {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end() || expired(it->second->stored_at)) return std::nullopt;
    return it->second->value;
  }

  [[nodiscard]] bool contains(const Key& key) const {
    std::lock_guard lock(mutex_);
    return index_.contains(key);
  }

  [[nodiscard]] std::size_t size() const {
    std::lock_guard lock(mutex_);
    return order_.size();
  }

  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }

  [[nodiscard]] CacheStats stats() const {
    return {hits_.load(std::memory_order_relaxed), misses_.load(std::memory_order_relaxed),
            evictions_.load(std::memory_order_relaxed), size()};
  }

  /// Keys from most to least recently used.
  [[nodiscard]] std::vector<Key> keys() const {
    std::lock_guard lock(mutex_);
    std::vector<Key> out;
    out.reserve(order_.size());
    for (const auto& e : order_) out.push_back(e.key);
    return out;
  }

 private:
  struct Entry {
    Key key;
    Value value;
    Clock::time_point stored_at;
  };

  bool expired(Clock::time_point stored_at) const {
    return ttl_.count() > 0 && clock_->now() - stored_at > ttl_;
  }

  std::size_t capacity_;
  std::chrono::seconds ttl_;
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;
  std::unordered_map<Key, typename std::list<Entry>::iterator, Hash> index_;
  EvictionListener listener_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
  std::atomic<std::uint64_t> evictions_{0};
};

}  // namespace synsetlink
