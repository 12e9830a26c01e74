#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace bandlab {

/// Splits [0, n) into contiguous index blocks, runs `work(lo, hi)` on each
/// (possibly on worker threads), and merges the partial results in block
/// order.  The merge order is fixed, so results do not depend on jobs.
template <class T, class Work, class Merge>
T chunked_reduce(std::uint64_t n, int jobs, T init, Work work, Merge merge) {
    if (jobs < 1) jobs = 1;
    const std::uint64_t blocks = std::min<std::uint64_t>(jobs, n ? n : 1);
    if (blocks <= 1) {
        T local = std::move(init);
        local = merge(std::move(local), work(0, n));
        return local;
    }

    std::vector<T> partial;
    partial.reserve(blocks);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t lo = n * b / blocks;
        const std::uint64_t hi = n * (b + 1) / blocks;
        ranges.emplace_back(lo, hi);
        partial.push_back(init);
    }

    std::vector<std::thread> workers;
    workers.reserve(blocks);
    for (std::uint64_t b = 0; b < blocks; ++b)
        workers.emplace_back([&, b] { partial[b] = work(ranges[b].first, ranges[b].second); });
    for (auto& w : workers) w.join();

    T total = std::move(init);
    for (auto& p : partial) total = merge(std::move(total), std::move(p));
    return total;
}

}  // namespace bandlab
