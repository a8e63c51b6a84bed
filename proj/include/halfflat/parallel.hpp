#pragma once

#include <cstddef>
#include <functional>

namespace halfflat {

/// Worker count: set_threads() if called, else HALFFLAT_THREADS, else hardware concurrency.
int thread_count();
void set_threads(int n);

/// Runs fn(i) for i in [0, n) on up to thread_count() threads. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace halfflat
