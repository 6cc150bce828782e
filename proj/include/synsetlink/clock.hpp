#pragma once

#include <chrono>
#include <mutex>
#include <thread>

namespace synsetlink {

/// Time source used for rate limiting, backoff and cache expiry. Tests
/// swap in VirtualClock so nothing really sleeps.
class Clock {
 public:
  using duration = std::chrono::steady_clock::duration;
  using time_point = std::chrono::steady_clock::time_point;

  virtual ~Clock() = default;
  virtual time_point now() = 0;
  virtual void sleep_until(time_point t) = 0;

  void sleep_for(duration d) {
    if (d > duration::zero()) sleep_until(now() + d);
  }
};

class SteadyClock final : public Clock {
 public:
  time_point now() override { return std::chrono::steady_clock::now(); }
  void sleep_until(time_point t) override { std::this_thread::sleep_until(t); }
};

/// Starts at the epoch; sleeping advances time instantly.
class VirtualClock final : public Clock {
 public:
  time_point now() override {
    std::lock_guard lock(mutex_);
    return now_;
  }

  void sleep_until(time_point t) override {
    std::lock_guard lock(mutex_);
    if (t > now_) {
      slept_ += t - now_;
      now_ = t;
    }
  }

  void advance(duration d) {
    std::lock_guard lock(mutex_);
    now_ += d;
  }

  /// Total time spent in sleep_until.
  duration slept() {
    std::lock_guard lock(mutex_);
    return slept_;
  }

 private:
  std::mutex mutex_;
  time_point now_{};
  duration slept_{};
};

}  // namespace synsetlink
