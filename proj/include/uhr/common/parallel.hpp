#pragma once

#include <cstddef>
#include <functional>

namespace uhr {

// Runs task(i) for every i in [0, count) on at most `workers` threads.
// Items are claimed from a shared counter, so scheduling order varies, but
// callers write results into slot i and the outcome never depends on it.
// The first exception thrown by a task is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& task);

} // namespace uhr
