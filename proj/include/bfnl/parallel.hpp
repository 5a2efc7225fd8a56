#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

namespace bfnl::detail {

inline int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Contiguous near-equal partition of [0, total).
inline std::vector<std::pair<uint64_t, uint64_t>> split_ranges(uint64_t total, int jobs) {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  const uint64_t parts = jobs < 1 ? 1 : static_cast<uint64_t>(jobs);
  const uint64_t n = parts > total && total > 0 ? total : parts;
  uint64_t lo = 0;
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t hi = lo + total / n + (i < total % n ? 1 : 0);
    out.emplace_back(lo, hi);
    lo = hi;
  }
  return out;
}

// Runs fn(worker) for worker = 0..count-1, the last one on the calling thread.
inline void run_workers(size_t count, const std::function<void(size_t)>& fn) {
  if (count == 0) return;
  std::vector<std::thread> threads;
  threads.reserve(count - 1);
  for (size_t w = 0; w + 1 < count; ++w) threads.emplace_back(fn, w);
  fn(count - 1);
  for (auto& t : threads) t.join();
}

}  // namespace bfnl::detail
