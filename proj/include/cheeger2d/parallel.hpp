#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cheeger2d {

// Runs fn(i) for i in [0, n) on a few worker threads. Callers write results
// into per-index slots and combine them afterwards in index order, so the
// outcome does not depend on scheduling.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(n, hw == 0 ? 4 : hw);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

// Pairwise summation in fixed order; reproducible and accurate.
inline double pairwise_sum(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::size_t n = xs.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) xs[i] += xs[i + half];
        n = half;
    }
    return xs[0];
}

} // namespace cheeger2d
