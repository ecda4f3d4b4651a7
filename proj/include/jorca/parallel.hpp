#pragma once

#include <cstddef>
#include <functional>

namespace jorca {

/// Worker count: JORCA_THREADS when set (clamped to >= 1), otherwise
/// hardware concurrency.
unsigned thread_budget();

/// Runs body(i) for i in [0, n). Work is chunked over thread_budget()
/// threads; callers index into preallocated output slots, so results are
/// independent of the thread count. The first exception thrown by any body
/// is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace jorca
