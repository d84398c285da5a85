#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lcft {

/// Resolves a requested worker count: values < 1 mean "use the LCFT_THREADS
/// environment variable, else 1".
int resolve_threads(int requested);

/// Runs task(i) for i in [0, n_tasks) on up to `threads` workers. Tasks must
/// write only to their own output slots; the first exception is rethrown.
template <class Fn>
void parallel_for(std::int64_t n_tasks, int threads, Fn&& task) {
  threads = std::max(1, threads);
  if (threads == 1 || n_tasks <= 1) {
    for (std::int64_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_tasks);
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = static_cast<int>(std::min<std::int64_t>(threads, n_tasks));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lcft
