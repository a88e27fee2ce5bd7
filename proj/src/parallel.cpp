#include "ncs/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace ncs {

namespace {
std::atomic<unsigned> g_thread_cap{0};
}

void set_thread_cap(unsigned cap) { g_thread_cap.store(cap); }

unsigned thread_cap() { return g_thread_cap.load(); }

unsigned effective_threads(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned cap = g_thread_cap.load();
  unsigned n = cap == 0 ? hw : cap;
  if (jobs < n) n = static_cast<unsigned>(jobs);
  return n == 0 ? 1 : n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  unsigned workers = effective_threads(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ncs
