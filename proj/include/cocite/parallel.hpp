#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cocite {

/// Runs fn(worker, begin, end) over `jobs` contiguous chunks of [0, n) and
/// rethrows the first worker exception. Chunk boundaries depend only on
/// (n, jobs).
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn)
{
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            std::size_t begin = n * w / jobs;
            std::size_t end = n * (w + 1) / jobs;
            workers.emplace_back([&, w, begin, end] {
                try {
                    fn(w, begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace cocite
