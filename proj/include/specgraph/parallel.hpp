#pragma once

#include <functional>

#include "specgraph/types.hpp"

namespace specgraph {

/// Worker count from SPECGRAPH_THREADS, falling back to the hardware count.
int default_thread_count();

/// Run fn(0..n-1), each index exactly once. Work units must write disjoint
/// state so results do not depend on scheduling.
void parallel_for(Index n, const std::function<void(Index)>& fn, int threads = 0);

}  // namespace specgraph
