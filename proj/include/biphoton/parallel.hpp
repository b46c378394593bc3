#pragma once

#include <cstddef>
#include <functional>

namespace biphoton {

// Worker count: hardware concurrency, capped by the BIPHOTON_THREADS environment variable.
int worker_count();

// Runs body(i) for i in [0, n) on the worker pool. The first exception (lowest index)
// is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace biphoton
