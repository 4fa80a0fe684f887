#pragma once

#include <cstddef>
#include <functional>

namespace zaktp {

/// Worker count: hardware concurrency, capped by ZAKTP_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker threads. Each index is
/// handled exactly once; callers write results into per-index slots and
/// reduce them afterwards in index order, so output never depends on the
/// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace zaktp
