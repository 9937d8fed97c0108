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

#include "vuca/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace
{
    struct PlanCache
    {
        std::mutex mutex;
        std::map<std::pair<std::size_t, int>, fftw_plan> plans;

        ~PlanCache()
        {
            for (auto &[key, plan] : plans)
                fftw_destroy_plan(plan);
        }

        // FFTW planning is not thread-safe, execution with the new-array interface is.
        // FFTW_UNALIGNED keeps the codelet choice independent of buffer alignment, so results
        // are bit-identical from run to run.
        fftw_plan get(std::size_t n, int sign)
        {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = plans.find({n, sign});
            if (it != plans.end())
                return it->second;
            std::vector<std::complex<double>> scratch(n);
            auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
            fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
            plans.emplace(std::make_pair(n, sign), p);
            return p;
        }
    };

    PlanCache &cache()
    {
        static PlanCache c;
        return c;
    }

    void run(std::span<std::complex<double>> data, int sign)
    {
        if (data.size() <= 1)
            return;
        fftw_plan p = cache().get(data.size(), sign);
        auto *buf = reinterpret_cast<fftw_complex *>(data.data());
        fftw_execute_dft(p, buf, buf);
    }
}

void vuca::fft::forward(std::span<std::complex<double>> data)
{
    run(data, FFTW_FORWARD);
}

void vuca::fft::backward(std::span<std::complex<double>> data)
{
    run(data, FFTW_BACKWARD);
}
