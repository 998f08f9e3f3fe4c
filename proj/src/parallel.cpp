#include "strand/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace strand::parallel {

namespace {

std::size_t env_cap() {
    const char* raw = std::getenv("AFFINE_STRAND_THREADS");
    if (raw == nullptr) return 0;
    try {
        const long v = std::stol(raw);
        return v > 0 ? static_cast<std::size_t>(v) : 0;
    } catch (...) {
        return 0;
    }
}

std::atomic<std::size_t> g_cap{env_cap()};

} // namespace

std::size_t thread_cap() {
    std::size_t cap = g_cap.load();
    if (cap == 0) {
        cap = std::thread::hardware_concurrency();
        if (cap == 0) cap = 1;
    }
    return cap;
}

void set_thread_cap(std::size_t n) { g_cap.store(n); }

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t cap = thread_cap();
    if (n == 0) return;
    if (cap <= 1 || n < grain) {
        fn(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(cap, (n + grain - 1) / grain);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

} // namespace strand::parallel
