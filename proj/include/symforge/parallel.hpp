#pragma once

// Deterministic fork-join helpers.  Work is split into static index blocks
// and every result lands in a preassigned slot, so output never depends on
// thread scheduling; integer merges are exact, hence order-free.  The thread
// budget comes from the hardware, capped by the SYMFORGE_THREADS env var.

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace symforge {

inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SYMFORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v < 1024 && unsigned(v) < hw) return unsigned(v);
  }
  return hw;
}

namespace detail {

// Run fn(t) on workers 0..nw-1, propagating the first exception after join.
template <class F>
void run_workers(unsigned nw, F&& fn) {
  if (nw <= 1) {
    fn(0u);
    return;
  }
  std::vector<std::exception_ptr> errs(nw);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (unsigned t = 0; t < nw; ++t)
    pool.emplace_back([&, t] {
      try {
        fn(t);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

// fn(i) for i in [0, n); results returned in index order.
template <class F>
auto parallel_map(std::size_t n, F&& fn) {
  using R = decltype(fn(std::size_t(0)));
  std::vector<R> out(n);
  unsigned nw = thread_budget();
  if (nw > n) nw = unsigned(n ? n : 1);
  detail::run_workers(nw, [&](unsigned t) {
    for (std::size_t i = t; i < n; i += nw) out[i] = fn(i);
  });
  return out;
}

// Sum of fn(i) over [0, n); T must have exact associative-commutative +=
// (integers), which makes the result independent of the partition.
template <class T, class F>
T parallel_sum(std::size_t n, T init, F&& fn) {
  unsigned nw = thread_budget();
  if (nw > n) nw = unsigned(n ? n : 1);
  std::vector<T> part(nw, T(0));
  detail::run_workers(nw, [&](unsigned t) {
    T acc(0);
    for (std::size_t i = t; i < n; i += nw) acc += fn(i);
    part[t] = acc;
  });
  T total = init;
  for (const T& p : part) total += p;
  return total;
}

}  // namespace symforge
