/**
 * Copyright 2026 The mbi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MBI_PARALLEL_HPP
#define MBI_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace mbi {

/// Number of worker threads used by parallel_map when none is requested.
inline unsigned default_thread_count()
{
    return std::max(1U, std::thread::hardware_concurrency());
}

/**
 * Evaluates fn(0), ..., fn(count - 1) on up to `threads` workers and returns
 * the results in index order. Each index is handled by exactly one task, so
 * results do not depend on scheduling. The first exception thrown by any task
 * is rethrown after all workers have joined.
 */
template <class Fn>
auto parallel_map(std::size_t count, Fn&& fn, unsigned threads = default_thread_count())
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>>
{
    using Result = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<Result> out;
    out.reserve(count);
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
        return out;
    }

    std::vector<std::optional<Result>> results(count);

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) results[i].emplace(fn(i));
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

} // namespace mbi

#endif
