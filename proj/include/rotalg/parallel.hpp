#pragma once

#include <cstddef>
#include <functional>

namespace rotalg {

// Worker count from ROTALG_THREADS, else the hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n). Iterations must write to disjoint outputs;
// results are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rotalg
