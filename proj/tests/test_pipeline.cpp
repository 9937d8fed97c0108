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

#include <catch_amalgamated.hpp>

#include "vuca/error.hpp"
#include "vuca/fft.hpp"
#include "vuca/pipeline.hpp"
#include "vuca/synth.hpp"

#include <cmath>
#include <random>

using namespace vuca;
using Catch::Approx;

namespace
{
    Idsf white(std::size_t K, std::size_t N, std::uint64_t seed)
    {
        Idsf x(K, N);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
        for (auto &v : x.data())
            v = cd{nd(rng), nd(rng)};
        return x;
    }

    double mean_power(const Idsf &x)
    {
        double s = 0.0;
        for (const auto &v : x.data())
            s += std::norm(v);
        return s / static_cast<double>(x.data().size());
    }
}

TEST_CASE("spatial taper shape")
{
    const auto id = spatial_taper(100, 100, 0.0);
    CHECK(std::all_of(id.begin(), id.end(), [](double v) { return v == 1.0; }));

    const auto rect = spatial_taper(1000, 85, 0.0);
    CHECK(std::count(rect.begin(), rect.end(), 1.0) == 85);

    const auto t = spatial_taper(1000, 85, 0.5);
    CHECK(t[0] == 1.0);
    for (std::size_t i = 1; i < 500; ++i)
        CHECK(t[i] == Approx(t[1000 - i]).margin(1e-15));
    double e = 0.0;
    for (double v : t)
        e += v * v;
    CHECK(e == Approx(85.0).epsilon(0.02));

    CHECK_THROWS_AS(spatial_taper(10, 11, 0.5), DomainError);
    CHECK_THROWS_AS(spatial_taper(10, 5, 1.5), DomainError);
}

TEST_CASE("low-pass with alpha 0 and L_D = K leaves the data unchanged")
{
    auto x = white(64, 16, 1);
    const auto before = x.data();
    spectral_lowpass(x, 64, 0.0);
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(std::abs(x.data()[i] - before[i]) < 1e-12);
}

TEST_CASE("low-pass noise reduction is 10 log10(K / L_D)")
{
    struct Case
    {
        std::size_t K, L;
    };
    for (auto c : {Case{1000, 85}, Case{1440, 571}, Case{340, 85}})
    {
        auto x = white(c.K, 256, 17);
        const double before = mean_power(x);
        spectral_lowpass(x, c.L, 0.5);
        const double gain = to_db(before / mean_power(x));
        const double expect = to_db(static_cast<double>(c.K) / static_cast<double>(c.L));
        INFO("K " << c.K << " L_D " << c.L << " measured " << gain << " expected " << expect);
        CHECK(std::abs(gain - expect) <= 0.5);
    }
}

TEST_CASE("low-pass keeps a plane-wave column nearly intact")
{
    // beta = 2 pi R / lambda; the column's spatial modes extend to about beta < L_D / 2
    const auto p = preset("desk_fr3");
    const std::size_t K = p.sounder.num_virtual_antennas;
    const double beta = 2.0 * kPi * p.sounder.vuca_radius / p.sounder.wavelength();
    Idsf x(K, 1);
    for (std::size_t k = 0; k < K; ++k)
        x(k, 0) = std::polar(1.0, beta * std::cos((70.0 - 360.0 * k / K) * kPi / 180.0));
    spectral_lowpass(x, p.eval.spectral_filter_length, p.eval.spectral_filter_alpha);
    double mx = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        mx = std::max(mx, std::norm(x(k, 0)));
    CHECK(to_db(mx) == Approx(0.0).margin(1.0));
}

TEST_CASE("envelope and minimum PDP against brute force")
{
    auto x = white(7, 11, 3);
    const auto env = envelope_and_pdp(x);
    for (std::size_t n = 0; n < 11; ++n)
    {
        double mx = -1.0, mn = 1e300;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < 7; ++k)
        {
            const double p = std::norm(x(k, n));
            if (p > mx)
                mx = p, arg = k;
            mn = std::min(mn, p);
        }
        CHECK(env.envelope[n] == mx);
        CHECK(env.pdp_min[n] == mn);
        CHECK(env.pointing[n] == arg);
    }
    CHECK_THROWS_AS(envelope_and_pdp(Idsf{}), DomainError);
}

TEST_CASE("process_capture: single isotropic path gives a 0 dB peak at its delay")
{
    auto p = preset("desk_fr3");
    Scene sc;
    sc.tx_rx_distance = 0.0;
    sc.paths = {{40.0 / p.sounder.rx_sampling_rate, 123.4, {1.0, 0.0}}};
    const auto raw = synthesize_idsf(sc, p.sounder, p.eval);
    const auto proc = process_capture(raw, p.sounder, p.eval);
    CHECK(proc.processed);
    CHECK(proc.rows() == raw.rows());
    CHECK(proc.cols() == raw.cols() * 4);
    CHECK(proc.delay_step == Approx(1.0 / (4.0 * p.sounder.rx_sampling_rate)));
    const auto env = envelope_and_pdp(proc);
    const auto mx = std::max_element(env.envelope.begin(), env.envelope.end());
    CHECK(static_cast<std::size_t>(mx - env.envelope.begin()) == 160);
    CHECK(to_db(*mx) == Approx(0.0).margin(0.5));
}

TEST_CASE("process_capture guards")
{
    auto p = preset("desk_fr3");
    Idsf raw(p.sounder.num_virtual_antennas, p.sounder.sequence_length);
    raw.processed = true;
    CHECK_THROWS_AS(process_capture(raw, p.sounder, p.eval), DomainError);
    Idsf wrong(10, p.sounder.sequence_length);
    CHECK_THROWS_AS(process_capture(wrong, p.sounder, p.eval), DomainError);
}

TEST_CASE("scene noise floor is realised on the processed envelope")
{
    auto p = preset("desk_fr3");
    Scene sc;
    sc.noise_floor_db = -126.0;
    SynthOptions o;
    o.noise_seed = 99;
    const auto proc = process_capture(synthesize_idsf(sc, p.sounder, p.eval, o), p.sounder, p.eval);
    const double floor = envelope_floor_db(envelope_and_pdp(proc));
    CHECK(floor == Approx(-126.0).margin(0.3));
}

TEST_CASE("spatial envelope factor is cached and deterministic")
{
    const double a = spatial_envelope_factor(200, 50, 0.5);
    const double b = spatial_envelope_factor(200, 50, 0.5);
    CHECK(a == b);
    // the peak over 200 correlated rows of unit power noise sits well above the mean power L_D/K
    CHECK(a > 50.0 / 200.0);
}
