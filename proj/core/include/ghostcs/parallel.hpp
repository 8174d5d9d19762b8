#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace ghostcs {

/// Worker count for internal parallel loops. Honors the GHOSTCS_THREADS
/// environment variable, otherwise uses the hardware concurrency.
std::size_t thread_count();

/// Splits [0, n) into contiguous chunks and calls body(begin, end) for each,
/// possibly on several threads. Chunks never overlap, so bodies that write
/// disjoint outputs per index are deterministic regardless of thread count.
template <typename Body>
void parallel_for(std::size_t n, std::size_t min_chunk, Body&& body) {
  const std::size_t workers =
      std::min(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
  if (workers <= 1) {
    if (n > 0) body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(std::size_t{0}, std::min(n, chunk));
}

}  // namespace ghostcs
