#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "wtower/errors.hpp"

namespace wtower {

struct Config {
  // Largest tree order a construction may touch, for 1-2 labels and for
  // 3 or more labels.
  int max_order = 4;
  int max_order_wide = 2;
  int max_labels = 3;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: hardware concurrency
};

// Shared construction cache. Values are built once per key; concurrent
// requests for the same key wait for the first builder.
class Context {
 public:
  explicit Context(Config config = {}) : config_(config) {}
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const Config& config() const { return config_; }
  Config& config() { return config_; }

  // Throws Error(Budget) if trees of this order and label count exceed
  // the configured caps.
  void check_budget(int tree_order, int labels) const;

  template <class T>
  std::shared_ptr<const T> memo(const std::string& key,
                                const std::function<std::shared_ptr<const T>()>& build) {
    std::shared_future<std::shared_ptr<const void>> fut;
    std::promise<std::shared_ptr<const void>> prom;
    bool builder = false;
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(key);
      if (it == cache_.end()) {
        fut = prom.get_future().share();
        cache_.emplace(key, fut);
        builder = true;
      } else {
        fut = it->second;
      }
    }
    if (builder) {
      try {
        prom.set_value(std::static_pointer_cast<const void>(build()));
      } catch (...) {
        {
          std::lock_guard lock(mutex_);
          cache_.erase(key);
        }
        prom.set_exception(std::current_exception());
      }
    }
    return std::static_pointer_cast<const T>(fut.get());
  }

  std::size_t memo_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
  }

 private:
  Config config_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_future<std::shared_ptr<const void>>> cache_;
};

}  // namespace wtower
