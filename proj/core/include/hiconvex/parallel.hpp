#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace hiconvex {

// Worker count: min(hardware_concurrency, HICONVEX_THREADS if set and > 0).
int thread_budget();

struct MinResult {
    double value;
    std::size_t index;
};

/**
 * Minimum of eval(i) over i in [0, n), with the smallest attaining index.
 *
 * Chunk results are merged in chunk order with an index tie-break, so the
 * outcome is identical for any worker count, including 1.
 */
MinResult parallel_min(std::size_t n, const std::function<double(std::size_t)>& eval);

} // namespace hiconvex
