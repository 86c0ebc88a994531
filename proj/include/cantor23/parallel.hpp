#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace cantor23 {

// Splits [lo0, hi0) into fixed-size chunks, evaluates per_chunk on workers,
// and feeds results to consume strictly in chunk order. The chunk size is a
// parameter, never derived from the worker count, and the consume order is
// total, so every output is byte-identical for any jobs >= 1. Workers run at
// most a bounded window ahead of the consumer to cap buffered results.
template <class Result>
void chunked_run(std::int64_t lo0, std::int64_t hi0, std::int64_t chunk_size,
                 int jobs,
                 const std::function<Result(std::int64_t, std::int64_t)>& per_chunk,
                 const std::function<void(Result&)>& consume) {
  if (hi0 <= lo0) return;
  if (chunk_size < 1) chunk_size = 1;
  const std::int64_t n_chunks = (hi0 - lo0 + chunk_size - 1) / chunk_size;
  auto chunk_bounds = [&](std::int64_t c) {
    std::int64_t lo = lo0 + c * chunk_size;
    return std::pair<std::int64_t, std::int64_t>{lo, std::min(hi0, lo + chunk_size)};
  };

  if (jobs <= 1 || n_chunks == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) {
      auto [lo, hi] = chunk_bounds(c);
      Result r = per_chunk(lo, hi);
      consume(r);
    }
    return;
  }

  const std::int64_t window = 4ll * jobs;
  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::optional<Result>> ring(static_cast<std::size_t>(window));
  std::int64_t next_chunk = 0;   // next chunk index to claim
  std::int64_t drained = 0;      // chunks already consumed
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      std::int64_t c;
      {
        std::unique_lock<std::mutex> lk(mu);
        cv.wait(lk, [&] { return failure || next_chunk - drained < window; });
        if (failure || next_chunk >= n_chunks) return;
        c = next_chunk++;
      }
      auto [lo, hi] = chunk_bounds(c);
      try {
        Result r = per_chunk(lo, hi);
        std::unique_lock<std::mutex> lk(mu);
        ring[static_cast<std::size_t>(c % window)] = std::move(r);
        cv.notify_all();
      } catch (...) {
        std::unique_lock<std::mutex> lk(mu);
        if (!failure) failure = std::current_exception();
        cv.notify_all();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  int n_workers = static_cast<int>(std::min<std::int64_t>(jobs, n_chunks));
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);

  for (std::int64_t c = 0; c < n_chunks; ++c) {
    std::optional<Result> r;
    {
      std::unique_lock<std::mutex> lk(mu);
      auto& slot = ring[static_cast<std::size_t>(c % window)];
      cv.wait(lk, [&] { return failure || slot.has_value(); });
      if (failure) break;
      r = std::move(slot);
      slot.reset();
      ++drained;
      cv.notify_all();
    }
    consume(*r);
  }

  {
    std::unique_lock<std::mutex> lk(mu);
    if (!failure) next_chunk = std::max(next_chunk, n_chunks);
    cv.notify_all();
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cantor23
