#pragma once

// Index-parallel map with a deterministic result layout: every task writes
// only its own slot, so the output never depends on scheduling.  The worker
// count honours the QBOHM_THREADS environment variable as an upper bound.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qbohm {

inline unsigned thread_budget(std::size_t tasks) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QBOHM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
  }
  if (tasks < n) n = static_cast<unsigned>(tasks);
  return n == 0 ? 1 : n;
}

template <typename F>
void parallel_for(std::size_t count, F&& fn) {
  const unsigned workers = thread_budget(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace qbohm
