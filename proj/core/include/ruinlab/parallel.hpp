#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ruinlab {

/// Runs block_fn(first, last, worker) over a static split of [0, n) across
/// `workers` threads. Path-level randomness must come from per-index streams,
/// so results are identical for any worker count. The first worker exception
/// (by worker index) is rethrown after all threads join.
inline void parallel_for_paths(
    std::uint64_t n, int workers,
    const std::function<void(std::uint64_t, std::uint64_t, int)>& block_fn) {
  if (workers < 1) workers = 1;
  if (n == 0) return;
  if (static_cast<std::uint64_t>(workers) > n)
    workers = static_cast<int>(n);
  if (workers == 1) {
    block_fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t first = n * w / workers;
    const std::uint64_t last = n * (w + 1) / workers;
    pool.emplace_back([&, first, last, w] {
      try {
        block_fn(first, last, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace ruinlab
