#pragma once

#include <cstddef>
#include <functional>

namespace linkint {

/// Worker count used when a caller passes 0.
int default_worker_count();

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index runs
/// exactly once; callers write results into per-index slots so the outcome
/// does not depend on scheduling. If any call throws, the exception from the
/// lowest failing index is rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace linkint
