#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace curvesig {

/// Number of worker threads for internal sweeps: CURVESIG_THREADS when set
/// to a positive integer, otherwise the hardware concurrency.
int thread_budget();

/// Runs fn(0..n-1), possibly in parallel. Callers write results into
/// preallocated slots indexed by i, so outputs are deterministic regardless
/// of the thread count.
template <typename F>
void parallel_for(int n, F&& fn) {
  const int threads = std::min(thread_budget(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          if (failed.load(std::memory_order_relaxed)) return;
          fn(i);
        }
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace curvesig
