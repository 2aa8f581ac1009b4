#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace ivr {

// requested == 0 means "use the hardware count".
inline int effective_threads(int requested = 0) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, n). Work is handed out in index blocks via an
// atomic cursor; callers that need a deterministic result must write into
// per-index slots and reduce in index order afterwards.
inline void parallel_for(long n, const std::function<void(long)>& body, int threads = 0) {
  const int nthreads = effective_threads(threads);
  if (n <= 0) return;
  if (nthreads <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  const long block = std::max(1L, n / (static_cast<long>(nthreads) * 8));
  std::atomic<long> cursor{0};
  auto worker = [&] {
    for (;;) {
      const long lo = cursor.fetch_add(block);
      if (lo >= n) return;
      const long hi = std::min(n, lo + block);
      for (long i = lo; i < hi; ++i) body(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace ivr
