#include "hyperunif/parallel.hpp"

#include <atomic>

namespace hyperunif {
namespace {
std::atomic<unsigned> g_threads{0};
}

namespace detail {
bool& in_parallel_region() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

void set_thread_count(unsigned threads) { g_threads.store(threads); }

unsigned thread_count() {
  const unsigned t = g_threads.load();
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hyperunif
