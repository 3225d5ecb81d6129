#pragma once

// Deterministic trial parallelism: each trial is seeded by its index, and
// reductions are integer sums or fixed-order chunk sums, so results are
// byte-identical for any worker count.

#include <cstdint>
#include <thread>
#include <vector>

namespace noiselab {

inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// fn(t) -> uint64 contribution; returns the total (order-free integer sum)
template <class Fn>
std::uint64_t parallel_count(std::uint64_t trials, int threads, Fn fn) {
    threads = effective_threads(threads);
    if (threads <= 1 || trials < 64) {
        std::uint64_t total = 0;
        for (std::uint64_t t = 0; t < trials; ++t) total += fn(t);
        return total;
    }
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            std::uint64_t lo = trials * w / threads, hi = trials * (w + 1) / threads;
            std::uint64_t acc = 0;
            for (std::uint64_t t = lo; t < hi; ++t) acc += fn(t);
            partial[w] = acc;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

// fn(t) -> double; per-trial values land in fixed slots and are summed in
// index order, so the result does not depend on the thread count
template <class Fn>
void parallel_fill(std::uint64_t trials, int threads, std::vector<double>& out, Fn fn) {
    out.resize(trials);
    threads = effective_threads(threads);
    if (threads <= 1 || trials < 64) {
        for (std::uint64_t t = 0; t < trials; ++t) out[t] = fn(t);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            std::uint64_t lo = trials * w / threads, hi = trials * (w + 1) / threads;
            for (std::uint64_t t = lo; t < hi; ++t) out[t] = fn(t);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace noiselab
