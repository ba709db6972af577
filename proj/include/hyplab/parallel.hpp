#ifndef HYPLAB_PARALLEL_HPP
#define HYPLAB_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyplab {

/// Worker count: HYPLAB_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Calls f(i) for i in [begin, end) on up to thread_count() threads.
/// Each index is visited exactly once; the first exception thrown is rethrown.
template <class F>
void parallel_for(int begin, int end, F&& f)
{
    const int n = end - begin;
    if (n <= 0)
        return;
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i)
            f(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = begin + w; i < end; i += workers)
                    f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace hyplab

#endif // HYPLAB_PARALLEL_HPP
