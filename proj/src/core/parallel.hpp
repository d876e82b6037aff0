/*
   Copyright 2026 The bdec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bdec {

/// Calls fn(i) for every i in [0, n) using up to `workers` threads.
/// Units are claimed dynamically; callers store per-unit results by index
/// and reduce them in index order, so the outcome is independent of the
/// worker count. The first exception thrown by any unit is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn &&fn)
{
    workers = std::max(1u, workers);
    if (workers == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed))
                return;
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };

    const auto n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(n_threads - 1);
    for (unsigned t = 1; t < n_threads; ++t)
        pool.emplace_back(run);
    run();
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

/// Streaming mean/variance with an order-preserving merge.
struct Accumulator {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        n += 1.0;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }

    void merge(const Accumulator &o)
    {
        if (o.n == 0.0)
            return;
        if (n == 0.0) {
            *this = o;
            return;
        }
        const double total = n + o.n;
        const double delta = o.mean - mean;
        mean += delta * o.n / total;
        m2 += o.m2 + delta * delta * n * o.n / total;
        n = total;
    }

    double variance() const { return n > 1.0 ? m2 / (n - 1.0) : 0.0; }
    double std_error() const;
};

inline double Accumulator::std_error() const
{
    return n > 1.0 ? std::sqrt(variance() / n) : 0.0;
}

} // namespace bdec
