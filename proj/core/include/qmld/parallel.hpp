#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qmld {

/// Evaluates fn(0..count-1) across up to `jobs` threads and returns results
/// in index order, so reductions stay deterministic regardless of the
/// parallelism degree. Exceptions are rethrown on the calling thread.
template <class R, class F>
std::vector<R> parallel_map(std::size_t jobs, std::size_t count, F fn) {
  std::vector<R> out(count);
  if (count == 0) return out;
  if (jobs <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  jobs = std::min(jobs, count);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < jobs; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < count; i += jobs) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qmld
