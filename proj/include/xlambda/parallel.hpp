#pragma once

#include <thread>
#include <vector>

#include "xlambda/ff.hpp"

namespace xlam {

inline int default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : int(n);
}

// Static partition of [lo, hi) into `workers` contiguous chunks, one thread
// each. Chunk boundaries depend only on (lo, hi, workers), so per-chunk
// results merge deterministically in index order.
template <typename Fn>
void parallel_for(u64 lo, u64 hi, int workers, Fn&& body) {
    if (hi <= lo) return;
    u64 n = hi - lo;
    if (workers <= 1 || n < 2) {
        body(lo, hi);
        return;
    }
    u64 w = std::min<u64>(u64(workers), n);
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (u64 k = 0; k < w; ++k) {
        u64 a = lo + n * k / w;
        u64 b = lo + n * (k + 1) / w;
        threads.emplace_back([&body, a, b] { body(a, b); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace xlam
