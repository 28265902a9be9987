#pragma once

#include <cstddef>
#include <functional>

namespace hatom {

//! Runs body(i) for i in [0, n) on up to `jobs` threads (0 = hardware
//! concurrency). Each index runs exactly once; callers write results into
//! pre-sized slots so the output order never depends on scheduling.
//! The first exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)> &body);

} // namespace hatom
