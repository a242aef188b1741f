#pragma once

#include <cstddef>
#include <functional>

namespace twojet {

/// Worker count used when a call passes threads <= 0.  Starts at
/// hardware_concurrency.
int default_threads();
void set_default_threads(int threads);

/// Runs fn(i) for i in [0, count) on a bounded pool.  Callers write results
/// into per-index slots so the outcome does not depend on scheduling.  The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace twojet
