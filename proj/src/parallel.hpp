#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace thickknot {

/// Worker count for `tasks` independent tasks; jobs == 0 means one per core.
inline std::size_t worker_count(std::size_t tasks, std::size_t jobs) {
  std::size_t w = jobs == 0 ? std::thread::hardware_concurrency() : jobs;
  return std::max<std::size_t>(1, std::min(tasks, std::max<std::size_t>(1, w)));
}

/// Calls fn(i) for i in [0, n) on worker threads with a strided assignment.
/// Results must be written by index so their order never depends on jobs.
/// The first failure in index order is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  const std::size_t workers = worker_count(n, jobs);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace thickknot
