#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace varleb {

// Splits [0, n) into contiguous chunks, one per worker. body(i) must only
// write to slot i of preallocated output so results are order-independent.
template <class Body>
void parallel_for(long n, int threads, Body&& body) {
  if (n <= 0) return;
  int nt = threads;
  if (nt == 0) nt = static_cast<int>(std::thread::hardware_concurrency());
  if (nt <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  if (static_cast<long>(nt) > n) nt = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  const long chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// parallel_for that carries exceptions back to the caller (first one by
// index wins)
template <class Body>
void parallel_rows(long n, int threads, Body&& body) {
  if (n <= 0) return;
  std::vector<std::exception_ptr> errs(static_cast<size_t>(n));
  parallel_for(n, threads, [&](long i) {
    try {
      body(i);
    } catch (...) {
      errs[static_cast<size_t>(i)] = std::current_exception();
    }
  });
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace varleb
