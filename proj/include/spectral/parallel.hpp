#pragma once

#include <cstddef>
#include <functional>

namespace spectral {

/// Worker count: SPECTRAL_DIST_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n). Each index is owned by exactly one worker, so
/// bodies that write only to slot i are race-free; callers reduce the slots
/// afterwards in index order, which keeps results independent of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spectral
