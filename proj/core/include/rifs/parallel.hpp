#pragma once

#include <cstddef>
#include <functional>

namespace rifs {

/// Resolves a requested thread count: 0 means RIFS_THREADS if set, else the
/// machine's hardware concurrency. Never returns 0.
unsigned resolve_threads(unsigned requested);

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(begin, end, worker) on each. Chunk boundaries depend only on count
/// and the resolved thread count; callers that need thread-count independent
/// results must merge per-chunk output in chunk order or order-insensitively.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& body);

}  // namespace rifs
