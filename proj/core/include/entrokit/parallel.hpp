#pragma once

#include <cstddef>
#include <functional>

namespace entrokit {

// Worker cap: hardware concurrency, further limited by ENTROKIT_THREADS when
// that variable is set to a positive integer.
std::size_t worker_count();

// Runs fn(begin, end) over a partition of [0, count). Chunks are disjoint, so
// writing results to per-index slots yields output independent of the
// partitioning. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace entrokit
