#include "core/parallel.hpp"

#include <exception>

namespace expbasis {

void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn,
                     const std::function<bool(std::uint64_t)>& skip_chunk) {
  if (total == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t chunk_count = (total + chunk_size - 1) / chunk_size;
  const int workers = std::min<std::uint64_t>(resolve_thread_count(threads), chunk_count);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    for (;;) {
      std::uint64_t index = next.fetch_add(1);
      if (index >= chunk_count || failed.load()) return;
      std::uint64_t begin = index * chunk_size;
      std::uint64_t end = std::min(total, begin + chunk_size);
      if (skip_chunk && skip_chunk(begin)) continue;
      try {
        fn(index, begin, end);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace expbasis
