// SPDX-License-Identifier: Apache-2.0
//
// vuca-sounder: virtual circular array channel sounding and estimation
// Copyright (C) 2026 The vuca-sounder authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "vuca/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

std::size_t vuca::worker_count()
{
    std::size_t n = std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
    if (const char *env = std::getenv("VUCA_THREADS"))
    {
        try
        {
            const long cap = std::stol(env);
            if (cap >= 1)
                n = std::min(n, static_cast<std::size_t>(cap));
        }
        catch (const std::exception &)
        {
        }
    }
    return n;
}

void vuca::parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
{
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]()
    {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}
