#ifndef DDR_PARALLEL_HPP
#define DDR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace ddr {

/// Worker count: DDR_THREADS if set (>= 1), otherwise the hardware concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, n). Iterations must write disjoint data; the first
/// exception thrown by any iteration is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

} // namespace ddr

#endif
