#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace lozi {

/// Hardware concurrency, at least 1.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs body(k) for k in [0, count) on `workers` threads using contiguous blocks.
/// Each index is visited exactly once; callers write to disjoint slots.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(workers, count);
    const std::size_t block = (count + nthreads - 1) / nthreads;
    std::vector<std::jthread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t begin = t * block;
        const std::size_t end = std::min(count, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (std::size_t k = begin; k < end; ++k) body(k);
        });
    }
}

}  // namespace lozi
