#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cbm {

// Worker count: hardware concurrency, optionally capped by CBM_THREADS.
inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CBM_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

// Runs fn(chunk, begin, end) over [0, total) split into `chunks` contiguous
// ranges. Chunk boundaries are independent of the worker count, so per-chunk
// state (RNG streams, partial reductions merged in chunk order) stays
// deterministic under any CBM_THREADS setting.
inline void parallel_chunks(std::size_t total, unsigned chunks,
                            const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
    if (chunks == 0) chunks = 1;
    const std::size_t per = (total + chunks - 1) / chunks;
    const unsigned workers = std::min(worker_count(), chunks);
    if (workers <= 1) {
        for (unsigned c = 0; c < chunks; ++c) {
            const std::size_t b = std::min(total, static_cast<std::size_t>(c) * per);
            const std::size_t e = std::min(total, b + per);
            if (b < e) fn(c, b, e);
        }
        return;
    }
    std::atomic<unsigned> next{0};
    auto drain = [&] {
        for (unsigned c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            const std::size_t b = std::min(total, static_cast<std::size_t>(c) * per);
            const std::size_t e = std::min(total, b + per);
            if (b < e) fn(c, b, e);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

} // namespace cbm
