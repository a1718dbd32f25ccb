#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qgdd {

/// Worker cap: QGDD_THREADS if set, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("QGDD_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// f(worker, begin, end) on each. Chunk boundaries depend only on n and the
/// worker count, so per-worker results merged in worker order are deterministic.
template <class F>
void parallel_chunks(std::uint64_t n, F&& f, unsigned workers = worker_count()) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n)));
  if (workers <= 1) {
    f(0u, std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t step = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = std::min(n, w * step), e = std::min(n, b + step);
    threads.emplace_back([&f, w, b, e] { f(w, b, e); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace qgdd
