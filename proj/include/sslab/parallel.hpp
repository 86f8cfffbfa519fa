#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace sslab {

// Runs fn(i) for i in [0, count). Work is split into contiguous blocks,
// one per thread; fn writes to disjoint output slots so the result is
// identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned n_threads = 0) {
  if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
  if (n_threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (n_threads > count) n_threads = static_cast<unsigned>(count);
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  const std::size_t block = (count + n_threads - 1) / n_threads;
  for (unsigned t = 0; t < n_threads; ++t) {
    const std::size_t lo = t * block;
    const std::size_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace sslab
