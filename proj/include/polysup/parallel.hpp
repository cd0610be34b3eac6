#ifndef POLYSUP_PARALLEL_HPP
#define POLYSUP_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace polysup {

/**
 * Evaluates fn(0), ..., fn(n - 1) on up to `workers` threads and returns the
 * results in index order. The first exception (by index) is rethrown.
 */
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using T = decltype(fn(std::size_t{}));
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                slots[i].emplace(fn(i));
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t k = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(n, 1));
    if (k <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < k; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}   // namespace polysup

#endif
