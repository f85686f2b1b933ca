#pragma once

#include <cstddef>
#include <functional>

namespace ppstat {

/// Fixed worker pool over indices 0..count-1. Workers claim indices from a
/// shared atomic counter; callers write results into per-index slots, so the
/// outcome is schedule-independent. Exceptions from fn are rethrown.
void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace ppstat
