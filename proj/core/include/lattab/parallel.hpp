#pragma once

#include <cstddef>
#include <functional>

namespace lattab {

// Worker count: LATTAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(chunk) for chunk in [0, n_chunks). Chunks are claimed dynamically,
// so callers must write results to per-chunk slots and reduce them in order.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body);

}  // namespace lattab
