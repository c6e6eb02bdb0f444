// Fixed-partition parallel loop. Each index writes only its own output slot,
// so results do not depend on scheduling.
#pragma once

#include <cstddef>
#include <functional>

namespace deflekt {

/// Worker count: DEFLEKT_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Calls fn(k) for k in [0, n). Exceptions are rethrown on the caller thread
/// (the one from the lowest failing index).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace deflekt
