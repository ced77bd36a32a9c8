#pragma once

#include <cstddef>
#include <functional>

namespace seqtest {

// Worker count: SEQTEST_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, count) across thread_count() workers. Each index
// runs exactly once; callers write results into per-index slots so the
// outcome is independent of the worker count. The first exception thrown by a
// body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace seqtest
