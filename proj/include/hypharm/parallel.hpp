#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hypharm {

/// Worker count from HYPHARM_THREADS, defaulting to all hardware threads.
unsigned worker_count();

/// Runs fn(worker, begin, end) over contiguous static chunks of [0, n).
/// Chunking depends only on n and the worker count; callers that write
/// results by index get output independent of scheduling. The first
/// exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_chunks(std::size_t n, Fn&& fn, unsigned workers = worker_count()) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// out[i] = fn(i) for i in [0, n), in parallel.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_chunks(n, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
  });
  return out;
}

}  // namespace hypharm
