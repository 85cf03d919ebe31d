#pragma once

#include <cstddef>
#include <functional>

namespace swirl {

/// Worker count: $SWIRL_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads. Each
/// index is visited exactly once; callers write into per-index slots so the
/// result does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace swirl
