#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace backflow {

// Runs fn(i) for i in [0, n) across up to `threads` worker threads in
// contiguous chunks. Callers write results by index, so the output is
// identical for any thread count. The first worker exception is rethrown.
inline void parallel_for(size_t n, int threads,
                         const std::function<void(size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t workers = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const size_t lo = n * w / workers;
      const size_t hi = n * (w + 1) / workers;
      try {
        for (size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace backflow
