#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace bacf {

/// Worker count from BACF_NUM_THREADS (default 1).
inline int thread_count() {
  static const int n = [] {
    const char* env = std::getenv("BACF_NUM_THREADS");
    const int v = env ? std::atoi(env) : 1;
    return std::clamp(v, 1, 256);
  }();
  return n;
}

/// Calls fn(begin, end) over contiguous chunks of [0, n). Chunks write
/// disjoint outputs, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    if (n > 0) fn(0, n);
    return;
  }
  const int chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) {
      const int b = w * chunk, e = std::min(n, b + chunk);
      if (b >= e) continue;
      pool.emplace_back([&fn, &errors, w, b, e] {
        try {
          fn(b, e);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    try {
      fn(0, std::min(n, chunk));
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace bacf
