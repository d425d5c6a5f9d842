#include "dpl/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace dpl {

namespace {
std::atomic<size_t> g_threads{0};

size_t effective_threads() {
    size_t t = g_threads.load();
    if (t == 0) {
        t = std::thread::hardware_concurrency();
        if (t == 0) t = 1;
    }
    return t;
}
} // namespace

void set_thread_count(size_t n) { g_threads.store(n); }

size_t thread_count() { return effective_threads(); }

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    size_t t = effective_threads();
    if (t <= 1 || n < 512) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    t = std::min(t, n);
    std::vector<std::thread> workers;
    workers.reserve(t);
    size_t chunk = (n + t - 1) / t;
    for (size_t w = 0; w < t; ++w) {
        size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &body] {
            for (size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : workers) th.join();
}

} // namespace dpl
