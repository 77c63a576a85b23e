#pragma once

#include <cstddef>
#include <functional>

namespace subcert {

// Number of worker threads used by parallel_for: hardware concurrency,
// capped by the SUBCERT_THREADS environment variable when it is set.
int thread_budget();

// Runs fn(i) for i in [0, n). Chunked across threads; results written by
// the callback must go to pre-sized, index-addressed storage so the output
// does not depend on the execution schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace subcert
