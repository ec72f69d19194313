#include "hiconvex/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace hiconvex {

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("HICONVEX_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) hw = std::min<long>(hw, v);
    }
    return hw;
}

MinResult parallel_min(std::size_t n, const std::function<double(std::size_t)>& eval) {
    MinResult best{std::numeric_limits<double>::infinity(), n};
    if (n == 0) return best;

    const int workers = std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double v = eval(i);
            if (v < best.value) best = {v, i};
        }
        return best;
    }

    std::vector<MinResult> local(static_cast<std::size_t>(workers),
                                 {std::numeric_limits<double>::infinity(), n});
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            MinResult m{std::numeric_limits<double>::infinity(), n};
            for (std::size_t i = lo; i < hi; ++i) {
                const double v = eval(i);
                if (v < m.value) m = {v, i};
            }
            local[static_cast<std::size_t>(w)] = m;
        });
    }
    for (auto& t : pool) t.join();

    for (const auto& m : local) {
        if (m.value < best.value || (m.value == best.value && m.index < best.index)) best = m;
    }
    return best;
}

} // namespace hiconvex
