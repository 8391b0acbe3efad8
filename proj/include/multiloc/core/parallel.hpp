#pragma once

#include <cstddef>
#include <functional>

namespace multiloc {

// Worker cap: MULTILOC_THREADS when set (minimum 1), else hardware threads.
int worker_thread_limit();

// Runs fn(0..n-1) on up to worker_thread_limit() threads. fn must write only
// to its own index's output slot so the result is schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace multiloc
