#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qch {

// Worker count for sweep fan-out: QCH_WORKERS if set to a positive integer,
// otherwise the hardware concurrency, never less than 1.
inline int default_worker_count() {
  if (const char* env = std::getenv("QCH_WORKERS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for every i in [0, n). Each index is claimed by exactly one
// worker, so callers that write to slot i of a pre-sized buffer get results
// independent of the schedule. The first exception thrown by any worker is
// rethrown after all workers finish.
inline void parallel_for(size_t n, int workers, const std::function<void(size_t)>& fn) {
  if (n == 0) return;
  if (workers < 1) workers = 1;
  size_t thread_count = std::min<size_t>(static_cast<size_t>(workers), n);
  if (thread_count <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (size_t t = 0; t < thread_count; ++t) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qch
