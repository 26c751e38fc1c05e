#pragma once

#include <cstdint>
#include <functional>

namespace grex {

/// Worker count from GREX_WORKERS, else a small hardware-based default.
int default_workers();

/// Runs fn over [0, count) split into contiguous chunks, one per worker.
/// Callers write results by index, so output is identical for any worker
/// count.
void parallel_for(int workers, std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t, int)>& fn);

}  // namespace grex
