#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace spectra {

/// Number of workers to use when the caller passes 0.
int default_workers() noexcept;

/// Runs body(k) for k in [0, count) on up to `workers` threads. The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

/// Maps [0, count) through `fn` in parallel; results are stored by index,
/// so the output does not depend on the worker count.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int workers, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, workers, [&](std::size_t k) { out[k] = fn(k); });
  return out;
}

}  // namespace spectra
