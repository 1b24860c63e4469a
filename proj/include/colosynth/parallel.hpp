#pragma once

#include <cstdint>
#include <functional>

namespace colosynth {

// Worker count: min(hardware_concurrency, COLOSYNTH_THREADS if set). At least 1.
int worker_count();

// Runs fn(i) for i in [begin, end) across workers. Each index must write only
// its own outputs; results are then independent of the schedule.
void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn);

// Chunked variant: fn(chunk_begin, chunk_end) on contiguous ranges.
void parallel_for_chunked(int64_t begin, int64_t end,
                          const std::function<void(int64_t, int64_t)>& fn);

}  // namespace colosynth
