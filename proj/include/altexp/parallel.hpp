#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace altexp {

/// Worker count: ALTGEN_THREADS when set to a positive integer, else the
/// hardware concurrency.
inline unsigned thread_count()
{
    if (const char* env = std::getenv("ALTGEN_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(lo, hi) on consecutive blocks of [0, n) across the workers.
/// Block boundaries depend only on n and `grain`, so per-block results are
/// the same for any worker count.
template <class Fn>
void parallel_blocks(std::size_t n, std::size_t grain, Fn&& fn)
{
    if (n == 0)
        return;
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t blocks = (n + grain - 1) / grain;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b)
            fn(b * grain, std::min(n, (b + 1) * grain));
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t b = w; b < blocks; b += workers)
                    fn(b * grain, std::min(n, (b + 1) * grain));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!err)
                    err = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

/// Sum of f(i) over [0, n) in fixed-size blocks, added in block order.
template <class F>
double parallel_sum(std::size_t n, F&& f, std::size_t grain = 4096)
{
    const std::size_t blocks = (n + grain - 1) / grain;
    std::vector<double> part(blocks, 0.0);
    parallel_blocks(n, grain, [&](std::size_t lo, std::size_t hi) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i)
            s += f(i);
        part[lo / grain] = s;
    });
    double total = 0;
    for (double p : part)
        total += p;
    return total;
}

} // namespace altexp
