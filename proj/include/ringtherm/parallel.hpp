#pragma once

#include <cstddef>
#include <functional>

namespace ringtherm {

// Worker count: hardware concurrency, capped by RINGTHERM_THREADS if set.
int worker_count();

// Runs fn(i) for i in [0, n) on the worker pool. Callers own determinism:
// fn must write only to slot i of preallocated storage. The first exception
// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace ringtherm
