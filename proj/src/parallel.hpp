#pragma once
// Static work split over hardware threads; body(i) must be independent per i.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stc::detail {

template <class Body>
void parallel_for(std::size_t count, Body body) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, count / 4 + 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    // The failure with the lowest index wins, so errors do not depend on timing.
    std::exception_ptr error;
    std::size_t error_at = count;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            std::size_t i = w;
            try {
                for (; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < error_at) {
                    error_at = i;
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace stc::detail
