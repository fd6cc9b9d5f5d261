// parallel.hpp - deterministic index-parallel loops.
#pragma once

#include <cstddef>
#include <functional>

namespace tbell {

// Worker count from TBELL_THREADS (unset or 0 = hardware concurrency).
int configured_threads();

// Calls body(i) for every i in [0, count) on up to `threads` workers
// (threads <= 0 means configured_threads()). Indices are assigned in fixed
// contiguous blocks; body must write only to slots owned by its index, so
// results do not depend on the worker count. The first exception thrown by
// any body is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace tbell
