#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gpexp {

// Worker count for data-parallel loops. Overridable via GPEXP_THREADS.
inline int default_thread_count() {
    if (const char* env = std::getenv("GPEXP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Statically partitioned parallel loop. Each index writes only to its own
// output slots, so the result is identical for any worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         int threads = default_thread_count()) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace gpexp
