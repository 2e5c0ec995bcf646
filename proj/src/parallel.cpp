#include "wmlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace wmlab {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t env_workers() {
    if (const char* env = std::getenv("WMLAB_THREADS")) {
        try {
            const auto n = std::stoul(env);
            if (n > 0)
                return n;
        } catch (const std::exception&) {
        }
    }
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

std::size_t worker_count() {
    const auto o = g_override.load();
    return o != 0 ? o : env_workers();
}

void set_worker_count(std::size_t n) { g_override.store(n); }

void for_each_chunk(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    const std::size_t chunks = chunk_count(begin, end, chunk);
    if (chunks == 0)
        return;
    auto run = [&](std::size_t c) {
        const std::uint64_t lo = begin + c * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(end, lo + chunk);
        fn(c, lo, hi);
    };
    const std::size_t workers = std::min(worker_count(), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            run(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
                try {
                    run(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace wmlab
