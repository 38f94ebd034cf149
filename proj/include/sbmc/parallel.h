#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sbmc {

// Worker count handed to Monte Carlo routines. Results never depend on it:
// every task derives its randomness from its own index.
struct Workers {
  unsigned count = 0;  // 0 means hardware concurrency

  unsigned resolved() const {
    if (count > 0) return count;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

// Runs fn(i) for i in [0, tasks). The first exception thrown by any task is
// rethrown on the calling thread after all workers stop.
template <typename Fn>
void parallel_for(std::size_t tasks, Workers workers, Fn&& fn) {
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(workers.resolved(), tasks));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace sbmc
