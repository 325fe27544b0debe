#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fuzzyvis {

// Runs fn(0..count-1) across up to `workers` threads. Tasks must write only
// to their own slots so the result is independent of scheduling order.
inline void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (workers <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int nthreads = std::min(workers, count);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fuzzyvis
