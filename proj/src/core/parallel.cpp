#include "core/parallel.hpp"

#include <thread>
#include <vector>

namespace tilefield {

std::pair<size_t, size_t> chunk_range(size_t n, int workers, int c) {
    size_t per = n / workers;
    size_t rem = n % workers;
    size_t begin = c * per + std::min<size_t>(c, rem);
    size_t len = per + (size_t(c) < rem ? 1 : 0);
    return {begin, begin + len};
}

void parallel_for(size_t n, int workers, const std::function<void(size_t, size_t, int)>& body) {
    if (n == 0) return;
    if (workers < 1) workers = 1;
    if (workers == 1 || n == 1) {
        body(0, n, 0);
        return;
    }
    if (size_t(workers) > n) workers = int(n);

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (int c = 1; c < workers; ++c) {
        auto [b, e] = chunk_range(n, workers, c);
        threads.emplace_back([&body, b, e, c] { body(b, e, c); });
    }
    auto [b0, e0] = chunk_range(n, workers, 0);
    body(b0, e0, 0);
    for (auto& t : threads) t.join();
}

} // namespace tilefield
