#ifndef CARLESON_PARALLEL_HPP
#define CARLESON_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace carleson {

inline unsigned worker_count() {
    if (const char* env = std::getenv("CARLESON_LAB_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(stratum) for stratum = 0..count-1 and returns results indexed by
/// stratum. Work is distributed over threads but results are stored by
/// stratum index, so any later combination happens in a fixed order and the
/// outcome never depends on the thread count.
template <typename T>
std::vector<T> run_strata(std::size_t count, const std::function<T(std::size_t)>& fn) {
    std::vector<T> results(count);
    const unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                results[i] = fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

} // namespace carleson

#endif
