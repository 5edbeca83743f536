#pragma once

#include <cstddef>
#include <functional>

namespace egvs {

/// Resolves a requested worker count: positive values are taken as-is,
/// anything else falls back to the EGVS_THREADS environment variable and
/// finally to the hardware concurrency.
unsigned resolve_threads(int requested);

/// Runs fn(begin, end) over a partition of [0, n) on `threads` workers.
/// Chunk boundaries depend only on n and threads, never on scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

/// Deterministic parallel reduction: [0, n) is cut into fixed-size blocks,
/// each block is summed serially, and the block sums are folded in block
/// order. The result is bit-identical for every thread count.
double blocked_sum(std::size_t n, unsigned threads,
                   const std::function<double(std::size_t)>& term);

}  // namespace egvs
