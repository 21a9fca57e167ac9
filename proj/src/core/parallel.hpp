#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace expbasis {

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk geometry does not depend on the worker count, so any
// per-chunk outputs merged in chunk order are reproducible across thread
// settings. The stop predicate lets scans cancel chunks that can no longer
// matter (workers may test extra items; callers must derive results only
// from canonical quantities).
void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn,
                     const std::function<bool(std::uint64_t /*chunk_begin*/)>& skip_chunk = {});

}  // namespace expbasis
