#pragma once

#include <functional>

namespace trigfactor {

/// Worker count: hardware concurrency, capped by TRIGFACTOR_THREADS.
int thread_count();

/// Runs body(i) for i in [0, n). Indices are split into contiguous chunks, so
/// callers that write only slot i get results independent of the thread count.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace trigfactor
