#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ramsey {

/// Calls fn(i) for every i in [0, count) on up to `workers` threads.
/// The first exception thrown by any call is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Smallest i in [0, count) with pred(i) true. Workers skip indices above the
/// best hit so far, so the answer does not depend on scheduling.
template <class Pred>
std::optional<std::size_t> parallel_find_first(std::size_t count, unsigned workers, Pred&& pred) {
  std::atomic<std::size_t> best{count};
  parallel_for(count, workers, [&](std::size_t i) {
    if (i >= best.load(std::memory_order_relaxed)) return;
    if (pred(i)) {
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  });
  const std::size_t b = best.load();
  if (b == count) return std::nullopt;
  return b;
}

}  // namespace ramsey
