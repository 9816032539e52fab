#ifndef TORLAB_PARALLEL_HPP
#define TORLAB_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace torlab {

/// Worker count used by parallel loops; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned effective_thread_count();

/// Runs f(i) for i in [0, n). Results must be written to per-index slots so
/// the outcome is independent of scheduling.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    unsigned workers = effective_thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(spawn - 1);
    for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace torlab

#endif
