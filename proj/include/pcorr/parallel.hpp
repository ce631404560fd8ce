#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace pcorr {

// Static block partition; f(block_index) must write only into its own slot.
// Results are reduced by the caller in fixed block order, so the outcome is
// identical for any thread count.
template <class F>
void parallel_blocks(std::int64_t nblocks, int threads, F&& f) {
    if (threads <= 1 || nblocks <= 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) f(b);
        return;
    }
    std::vector<std::thread> pool;
    const int nt = static_cast<int>(std::min<std::int64_t>(threads, nblocks));
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::int64_t b = t; b < nblocks; b += nt) f(b);
        });
    }
    for (auto& th : pool) th.join();
}

// Pairwise (cascade) summation over a fixed-order sequence of values.
// Used for all floating reductions that must not depend on worker count.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace pcorr
