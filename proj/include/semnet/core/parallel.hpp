#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace semnet {

inline unsigned default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) over [0, total) split into contiguous chunks.
// Chunk boundaries depend only on `total` and `chunk`, never on the thread
// count, so any reduction that combines chunk results in chunk order is
// deterministic regardless of --threads.
inline void parallel_chunks(std::size_t total, std::size_t chunk, unsigned threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (total == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t n_chunks = (total + chunk - 1) / chunk;
    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c * chunk, std::min(total, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c * chunk, std::min(total, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(n_chunks));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace semnet
