#pragma once

#include <cstddef>
#include <functional>

namespace adaptive_pool {

/// Worker cap from ADAPTIVE_POOL_THREADS (0 or unset = hardware concurrency).
int thread_count();

/// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers
/// write results into per-index slots so the outcome is order independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace adaptive_pool
