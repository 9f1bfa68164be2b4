#pragma once

#include <cstddef>
#include <functional>

namespace respsim {

/// Number of worker threads to use for a request of `requested` (0 = machine parallelism).
unsigned resolve_threads(unsigned requested) noexcept;

/// Run fn(i) for i in [0, n) on up to `threads` threads.
///
/// Work is split into contiguous chunks; callers write results by index so the
/// outcome is independent of the thread count. If any call throws, the
/// exception from the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace respsim
