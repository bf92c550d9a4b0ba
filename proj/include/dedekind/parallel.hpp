#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace dedekind {

// jobs <= 0 resolves to $DEDEKIND_JOBS, falling back to the hardware count.
int resolve_jobs(int jobs);

// Dynamic work distribution over [0, n): fn(index, worker). jobs == 1 runs
// inline. Workers pull indices from a shared counter, so uneven item costs
// balance out; callers that need determinism must merge by index, never by
// completion order.
template <typename F>
void parallel_for_dynamic(int jobs, std::size_t n, F&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&](int id) {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            fn(i, id);
        }
    };
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::size_t>(jobs, n));
    pool.reserve(count);
    for (int t = 1; t < count; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
}

}  // namespace dedekind
