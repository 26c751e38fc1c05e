#include "grex/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace grex {

int default_workers() {
    if (const char* env = std::getenv("GREX_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return std::min(w, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::max(1, std::min(static_cast<int>(hw), 8));
}

void parallel_for(int workers, std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
    if (count <= 0) return;
    workers = std::max(1, static_cast<int>(std::min<std::int64_t>(workers, count)));
    if (workers == 1) {
        fn(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::int64_t b = w * chunk;
        std::int64_t e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back([=, &fn] { fn(b, e, w); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace grex
