#ifndef ADAPTUI_PARALLEL_HPP
#define ADAPTUI_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace adaptui {

/// Worker count for internally parallel loops. 0 picks the hardware
/// concurrency. Results never depend on this value.
struct ExecutionOptions {
    std::size_t threads{1};

    [[nodiscard]] auto resolved_threads() const -> std::size_t
    {
        if (threads != 0) {
            return threads;
        }
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
};

/// Calls fn(i) for every i in [0, count), splitting the range into contiguous
/// chunks. fn must only write to slots owned by i.
template <typename Fn>
void parallel_for(std::size_t count, ExecutionOptions const& options, Fn&& fn)
{
    auto const workers = std::min(options.resolved_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        auto const chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            auto const begin = w * chunk;
            auto const end = std::min(count, begin + chunk);
            pool.emplace_back([&, begin, end] {
                try {
                    for (auto i = begin; i < end; ++i) {
                        fn(i);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace adaptui

#endif
