#pragma once

#include <functional>

namespace collapse {

// Worker count: `requested` if positive, else hardware concurrency; the
// COLLAPSE_BUDGET_THREADS environment variable caps the result.
int resolve_threads(int requested = 0);

// Run body(0..n-1) on up to `threads` workers. Work items must be independent;
// whoever runs them, item i writes only slot i, so results keep grid order.
// The first exception thrown by any item is rethrown after the pool drains.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace collapse
