#pragma once

#include <thread>
#include <vector>

namespace zetalab {

// Apply fn(i) for i in [0, count), optionally across threads. Each index is
// visited exactly once; callers write results into preallocated slots keyed
// by i, so the output layout is identical for every thread count. Reductions
// over the results must be done by the caller in fixed index order.
template <typename Fn>
void parallel_for_index(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (std::size_t w = 0; w < nthreads; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace zetalab
