#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace arcwave {

// Worker count used by parallel_for; 0 selects hardware concurrency.
inline std::atomic<int>& thread_setting() {
  static std::atomic<int> n{0};
  return n;
}

inline void set_num_threads(int n) { thread_setting() = std::max(0, n); }

inline int num_threads() {
  int n = thread_setting();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

inline bool& in_parallel_region() {
  thread_local bool inside = false;
  return inside;
}

// Runs body(i) for i in [0, count). Nested calls run serially. Each index writes only its own slot, so results do not
// depend on scheduling. The first exception thrown by any body is rethrown.
template <typename Body>
void parallel_for(int count, Body&& body) {
  const int workers = in_parallel_region() ? 1 : std::min(num_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    const bool outer = in_parallel_region();
    in_parallel_region() = true;
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
    in_parallel_region() = outer;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace arcwave
