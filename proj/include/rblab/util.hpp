#pragma once

#include <cstdlib>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace rblab {

// Worker cap: RBLAB_THREADS if set (>=1), else hardware concurrency.
inline int env_threads() {
  if (const char* s = std::getenv("RBLAB_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Deterministic parallel map over [0, n): fn(i) must write only to its own
// slot(s), so the result is identical for every thread count.
template <class F>
void parallel_for(int n, F&& fn) {
  int nt = std::min(env_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += nt) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Pairwise (fixed association order) summation: deterministic and with
// O(log n) rounding growth, used for every quadrature reduction.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0;
    for (double v : x) s += v;
    return s;
  }
  size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace rblab
