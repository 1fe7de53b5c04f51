#include "parallel.hpp"

#include <atomic>

namespace asymwalk {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned thread_count() noexcept {
  const unsigned n = g_threads.load(std::memory_order_relaxed);
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_thread_count(unsigned n) noexcept { g_threads.store(n, std::memory_order_relaxed); }

}  // namespace asymwalk
