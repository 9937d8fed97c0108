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

#ifndef VUCA_PARALLEL_HPP
#define VUCA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace vuca
{
    // Worker count: hardware concurrency, capped by the VUCA_THREADS environment variable
    std::size_t worker_count();

    // Runs body(i) for i in [0, n). Each index is processed exactly once by one worker,
    // so results do not depend on the number of workers.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);
}

#endif
