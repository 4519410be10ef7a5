#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace leslie {

/// Data-parallel width from LESLIE_SIM_THREADS (0 or unset = hardware concurrency).
int worker_count();

/// Runs body(i) for i in [0, n). Each index is written by exactly one worker, so
/// results never depend on the partition.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  constexpr std::size_t kMinPerWorker = 8192;
  const auto workers = static_cast<std::size_t>(worker_count());
  const std::size_t chunks = std::min(workers, n / kMinPerWorker);
  if (chunks <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(chunks - 1);
  const std::size_t per = (n + chunks - 1) / chunks;
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t lo = c * per;
    const std::size_t hi = std::min(n, lo + per);
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (std::size_t i = 0; i < std::min(n, per); ++i) body(i);
}

}  // namespace leslie
