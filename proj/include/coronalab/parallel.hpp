#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coronalab {

/// Worker count: CORONA_LAB_THREADS if set and positive, else hardware concurrency (capped at 8).
std::size_t worker_count();

namespace detail {
/// Set on worker threads; nested parallel_for calls then run inline.
inline thread_local bool in_worker = false;
}  // namespace detail

/// Runs fn(i) for i in [0, n) over contiguous static chunks. Each call must write only
/// state owned by index i; callers reduce afterwards in index order, so results do not
/// depend on the worker count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_chunk = 1) {
  const std::size_t workers =
      std::min(worker_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
  if (workers <= 1 || n <= 1 || detail::in_worker) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      detail::in_worker = true;
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace coronalab
