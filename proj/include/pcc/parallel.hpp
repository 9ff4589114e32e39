#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pcc {

// Worker count: PCC_THREADS caps it, otherwise hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("PCC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// Runs fn(worker_id, begin, end) over a static partition of [0, n).
// Enumeration and sampling loops are embarrassingly parallel over the
// tape/file space; callers merge per-worker results afterwards so the
// outcome is independent of the worker count.
template <typename Fn>
inline unsigned parallel_chunks(uint64_t n, Fn&& fn) {
    unsigned workers = worker_count();
    if (n < 2 * workers) workers = 1;
    if (workers == 1) {
        fn(0u, uint64_t{0}, n);
        return 1;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; w++) {
        uint64_t begin = n * w / workers;
        uint64_t end = n * (w + 1) / workers;
        threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    }
    for (auto& t : threads) t.join();
    return workers;
}

} // namespace pcc
