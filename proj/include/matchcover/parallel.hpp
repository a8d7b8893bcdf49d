#pragma once

// Deterministic sharded parallelism. Work items are indexed; each index is
// computed independently and results are merged in index order, so output
// never depends on the worker count. MATCHCOVER_THREADS caps the pool
// (0 or unset = hardware concurrency).

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace matchcover {

inline unsigned worker_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("MATCHCOVER_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return n;
}

// results[i] = fn(i) for i in [0, count), evaluated by up to `threads`
// workers pulling indices from a shared counter.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F&& fn, unsigned threads = worker_count()) {
  std::vector<R> results(count);
  if (count == 0) return results;
  if (threads > count) threads = static_cast<unsigned>(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
  return results;
}

}  // namespace matchcover
