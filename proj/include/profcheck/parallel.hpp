#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace profcheck {

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is handed out
/// dynamically; callers write results into per-index slots so the outcome
/// does not depend on scheduling. The exception of the lowest failing index
/// is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t jobs, std::size_t n, Body&& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t const i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  std::size_t const count = jobs < n ? jobs : n;
  for (std::size_t t = 0; t < count; ++t) {
    pool.emplace_back(worker);
  }
  for (auto& th : pool) {
    th.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace profcheck
