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

// Independent reference implementations for tests. Long double, direct sums, no library code.

#ifndef VUCA_TESTS_ORACLES_HPP
#define VUCA_TESTS_ORACLES_HPP

#include "vuca/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle
{
    using ld = long double;
    inline constexpr ld pi = 3.141592653589793238462643383279502884L;

    // Dolph-Chebyshev window as a real cosine sum of the Chebyshev spectrum
    inline std::vector<double> dolph_chebyshev(std::size_t N, double psl_db)
    {
        const ld r = std::pow(10.0L, static_cast<ld>(psl_db) / 20.0L);
        const ld x0 = std::cosh(std::acosh(r) / static_cast<ld>(N - 1));
        auto T = [&](ld x) {
            const ld n = static_cast<ld>(N - 1);
            if (std::abs(x) <= 1.0L)
                return std::cos(n * std::acos(x));
            const ld v = std::cosh(n * std::acosh(std::abs(x)));
            return (x < 0.0L && (N - 1) % 2 == 1) ? -v : v;
        };
        std::vector<ld> w(N, 0.0L);
        for (std::size_t k = 0; k < N; ++k)
        {
            const ld Wk = T(x0 * std::cos(pi * static_cast<ld>(k) / static_cast<ld>(N)));
            for (std::size_t n = 0; n < N; ++n)
            {
                const ld c = static_cast<ld>(n) - static_cast<ld>(N - 1) / 2.0L;
                w[n] += Wk * std::cos(2.0L * pi * static_cast<ld>(k) * c / static_cast<ld>(N));
            }
        }
        const ld mx = *std::max_element(w.begin(), w.end());
        std::vector<double> out(N);
        for (std::size_t n = 0; n < N; ++n)
            out[n] = static_cast<double>(w[n] / mx);
        return out;
    }

    // periodic autocorrelation at one lag
    inline std::complex<double> autocorr(const std::vector<std::complex<double>> &s, std::size_t lag)
    {
        std::complex<ld> acc{0.0L, 0.0L};
        const std::size_t M = s.size();
        for (std::size_t n = 0; n < M; ++n)
        {
            const auto a = std::complex<ld>(s[n].real(), s[n].imag());
            const auto b = std::complex<ld>(s[(n + lag) % M].real(), s[(n + lag) % M].imag());
            acc += a * std::conj(b);
        }
        return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }

    struct Params
    {
        ld total_power, path_loss_db, k_factor, mean_delay, delay_spread, angular_spread_deg;
        std::size_t num_paths;
    };

    // Large-scale parameters straight from their definitions. Path 1 is the earliest path (ties go
    // to the stronger one); the angular spread is the circular one.
    inline Params params(const std::vector<vuca::EstimatedPath> &p)
    {
        std::size_t first = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (p[i].delay < p[first].delay || (p[i].delay == p[first].delay && p[i].power > p[first].power))
                first = i;
        ld tot = 0, rest = 0, m1 = 0, c = 0, s = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            const ld P = p[i].power, t = p[i].delay;
            tot += P;
            if (i != first)
                rest += P;
            m1 += P * t;
            c += P * std::cos(static_cast<ld>(p[i].azimuth_deg) * pi / 180.0L);
            s += P * std::sin(static_cast<ld>(p[i].azimuth_deg) * pi / 180.0L);
        }
        Params r{};
        r.num_paths = p.size();
        r.total_power = tot;
        r.path_loss_db = -10.0L * std::log10(tot);
        r.k_factor = rest > 0 ? tot / rest : HUGE_VALL;
        r.mean_delay = m1 / tot;
        ld central = 0;
        for (const auto &q : p)
            central += static_cast<ld>(q.power) * (q.delay - r.mean_delay) * (q.delay - r.mean_delay);
        r.delay_spread = p.size() == 1 ? 0.0L : std::sqrt(central / tot);
        const ld R = std::min(1.0L, std::sqrt(c * c + s * s) / tot);
        r.angular_spread_deg = p.size() == 1 ? 0.0L : std::sqrt(-2.0L * std::log(R)) * 180.0L / pi;
        return r;
    }
}

#endif
