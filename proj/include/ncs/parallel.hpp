#pragma once

#include <cstddef>
#include <functional>

namespace ncs {

// Process-wide cap on worker threads. 0 means "auto" (hardware concurrency).
// The CLI wires this to the NCS_THREADS environment variable.
void set_thread_cap(unsigned cap);
unsigned thread_cap();

// Number of threads a job of `jobs` independent items would actually use.
unsigned effective_threads(std::size_t jobs);

// Runs fn(0..n-1), possibly on several threads. Results must not depend on
// execution order; callers get determinism by writing to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ncs
