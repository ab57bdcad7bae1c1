#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace imreg::detail {

// Splits [0, trials) into contiguous chunks, one per worker. Each worker
// fills its own accumulator; accumulators are merged in chunk order, so any
// associative merge gives results independent of the thread count.
template <class Acc, class Body, class Merge>
Acc parallel_chunks(std::uint64_t trials, unsigned threads, const Acc& init, Body body,
                    Merge merge) {
  const std::uint64_t workers =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads == 0 ? 1 : threads, trials));
  std::vector<Acc> partial(workers, init);
  std::vector<std::exception_ptr> failures(workers);
  auto run = [&](std::uint64_t w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    try {
      body(begin, end, partial[w]);
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  Acc total = init;
  for (auto& p : partial) merge(total, p);
  return total;
}

}  // namespace imreg::detail
