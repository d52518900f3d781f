#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cbs {

using cd = std::complex<double>;

// Pairwise (cascade) summation over a fixed-order sample vector. Associativity
// is fixed by the recursion tree, so results are bit-stable for a given input
// order regardless of chunking elsewhere.
template <typename T>
T pairwise_sum(const std::vector<T>& xs, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n == 0) return T{};
  if (n == 1) return xs[lo];
  if (n <= 8) {
    T acc = xs[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(xs, 0, xs.size());
}

// Portable uniform double in [0,1) from a 64-bit word: top 53 bits. Avoids
// std::uniform_real_distribution, whose output is implementation-defined;
// identical seeds must give bit-identical streams everywhere.
inline double u64_to_unit_double(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Static-partition parallel map: deterministic output placement (index i is
// always written by the same expression), so multicore and single-core runs
// produce identical results.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cbs
