#include "common.hpp"

#include <atomic>
#include <cmath>

namespace scslab {

namespace {
std::atomic<int> g_thread_override{-1};  // -1 = not set programmatically
}

void set_thread_budget(int n) { g_thread_override.store(n < 0 ? 0 : n); }

int thread_budget() {
    int o = g_thread_override.load();
    if (o > 0) return o;
    if (o != 0) {  // not set programmatically: consult the environment
        if (const char* env = std::getenv("SCSLAB_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) return int(v);
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

void parallel_blocks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t workers = std::size_t(thread_budget());
    if (workers > n) workers = n;
    if (workers <= 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t b = 0; b < workers; ++b) {
        std::size_t lo = b * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, b] { fn(lo, hi, b); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace scslab
