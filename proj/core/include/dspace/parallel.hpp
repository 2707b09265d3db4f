#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dspace {

/// Execution settings shared by every checker. Results never depend on
/// `workers`; only wall time does.
struct Exec {
  unsigned workers = 1;
};

/// Splits [0, n) into at most `exec.workers` contiguous chunks and calls
/// body(begin, end, chunk_index) for each, in parallel. Chunk boundaries are
/// a pure function of (n, workers) so callers can merge per-chunk results in
/// chunk order.
template <typename Body>
void parallel_chunks(const Exec& exec, std::size_t n, Body&& body) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(exec.workers, n));
  if (chunks == 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      threads.emplace_back([&, begin, end, c] {
        try {
          body(begin, end, c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Number of chunks parallel_chunks will use for (exec, n).
inline std::size_t chunk_count(const Exec& exec, std::size_t n) {
  return std::max<std::size_t>(1, std::min<std::size_t>(exec.workers, n));
}

}  // namespace dspace
