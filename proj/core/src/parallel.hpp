#pragma once

#include <cstddef>
#include <algorithm>
#include <exception>
#include <utility>
#include <thread>
#include <vector>

namespace tdenoise::detail {

/// Runs fn(worker) for worker in [0, workers) on separate threads and
/// rethrows the first failure.
template <typename Fn>
void run_workers(std::size_t workers, Fn&& fn) {
  if (workers <= 1) {
    fn(std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          fn(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Contiguous split of [0, n) into `parts` ranges; returns [begin, end) of `part`.
inline std::pair<std::size_t, std::size_t> split_range(std::size_t n, std::size_t parts,
                                                       std::size_t part) {
  const std::size_t base = n / parts;
  const std::size_t extra = n % parts;
  const std::size_t begin = part * base + std::min(part, extra);
  return {begin, begin + base + (part < extra ? 1 : 0)};
}

}  // namespace tdenoise::detail
