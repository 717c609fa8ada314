#pragma once

#include <cstddef>
#include <functional>

namespace tilefield {

// Static contiguous partition of [0, n) over `workers` threads. Chunk
// boundaries depend only on (n, workers), so any reduction done in chunk
// order is deterministic for a fixed worker count.
void parallel_for(size_t n, int workers, const std::function<void(size_t, size_t, int)>& body);

// Chunk [begin, end) assigned to chunk index c of `workers`.
std::pair<size_t, size_t> chunk_range(size_t n, int workers, int c);

} // namespace tilefield
