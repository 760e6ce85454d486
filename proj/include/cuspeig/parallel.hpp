#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace cuspeig {

// Fixed chunk size for all partitioned loops.  The chunk layout and the
// order of the final accumulation never depend on the worker count, so
// every reduction below is bit-identical for 1..N workers.
inline constexpr std::size_t kChunkSize = 1024;

template <class ChunkFn>
void parallel_for_chunks(std::size_t count, int workers, ChunkFn&& body) {
  if (count == 0) return;
  const std::size_t nchunks = (count + kChunkSize - 1) / kChunkSize;
  auto run = [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunkSize;
    const std::size_t end = std::min(begin + kChunkSize, count);
    body(chunk, begin, end);
  };
  if (workers <= 1 || nchunks == 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run(c);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, nchunks);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t w = 0; w < nthreads; ++w)
    threads.emplace_back([&, w] {
      for (std::size_t c = w; c < nchunks; c += nthreads) run(c);
    });
  for (auto& t : threads) t.join();
}

// Ordered reduction: per-chunk partial sums accumulated sequentially
// within the chunk, then combined in chunk order.
template <class TermFn>
double chunked_sum(std::size_t count, int workers, TermFn&& term) {
  if (count == 0) return 0.0;
  const std::size_t nchunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<double> partial(nchunks, 0.0);
  parallel_for_chunks(count, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    partial[chunk] = s;
  });
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace cuspeig
