#ifndef HYPERUNIF_PARALLEL_HPP_
#define HYPERUNIF_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyperunif {

namespace detail {
/// True on worker threads spawned by parallel_for; nested calls run inline.
bool& in_parallel_region();
}  // namespace detail

/// Process-wide worker count. 0 means std::thread::hardware_concurrency().
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(i) for i in [begin, end) over contiguous static blocks. Callers
/// write results into per-index slots, so output never depends on the number
/// of threads. The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1 || detail::in_parallel_region()) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * block;
    const std::size_t hi = std::min(end, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      detail::in_parallel_region() = true;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hyperunif

#endif  // HYPERUNIF_PARALLEL_HPP_
