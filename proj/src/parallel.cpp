#include "colosynth/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace colosynth {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("COLOSYNTH_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

void parallel_for_chunked(int64_t begin, int64_t end,
                          const std::function<void(int64_t, int64_t)>& fn) {
  int64_t count = end - begin;
  if (count <= 0) return;
  int workers = worker_count();
  if (workers == 1 || count == 1) {
    fn(begin, end);
    return;
  }
  // Fixed-size chunks claimed from an atomic counter. Chunk boundaries do not
  // depend on the worker count, only the claim order does.
  int64_t chunk = (count + workers * 4 - 1) / (workers * 4);
  if (chunk < 1) chunk = 1;
  std::atomic<int64_t> next{begin};
  auto body = [&]() {
    for (;;) {
      int64_t lo = next.fetch_add(chunk);
      if (lo >= end) return;
      int64_t hi = lo + chunk < end ? lo + chunk : end;
      fn(lo, hi);
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int i = 1; i < workers; ++i) threads.emplace_back(body);
  body();
  for (auto& t : threads) t.join();
}

void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn) {
  parallel_for_chunked(begin, end, [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace colosynth
