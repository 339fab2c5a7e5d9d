#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bcert {

// Runs task(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). The first exception thrown by any task is rethrown after all
// workers have joined.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

unsigned resolve_thread_count(unsigned requested);

// Pairwise (tree) summation in fixed order; the result depends only on the
// input sequence, not on how it was produced.
double pairwise_sum(std::span<const double> values);

}  // namespace bcert
