#pragma once

#include <cstddef>
#include <functional>

namespace derivclust {

// Splits [0, n) into chunks of `chunk` items and runs fn(chunk_index, begin, end)
// on up to `threads` workers. Chunk boundaries depend only on n and chunk, so
// per-chunk partial results reduced in chunk order do not depend on `threads`.
// The first exception thrown by fn is rethrown after all workers finish.
void parallel_chunks(std::size_t n, std::size_t chunk, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

constexpr std::size_t chunk_count(std::size_t n, std::size_t chunk) {
  return (n + chunk - 1) / chunk;
}

}  // namespace derivclust
