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
#include "vuca/model.hpp"

#include <random>

using namespace vuca;
using Catch::Approx;

TEST_CASE("k_min reproduces the minimum antenna counts of both presets")
{
    CHECK(k_min(14e9, 0.144) == 85);
    CHECK(k_min(160e9, 0.085) == 571);
}

TEST_CASE("k_min is exactly 1 when lambda0 equals 4 pi R_A")
{
    const double R = 0.05;
    const double f0 = kSpeedOfLight / (4.0 * kPi * R);
    CHECK(k_min(f0, R) == 1);
}

TEST_CASE("k_min rejects non-positive input")
{
    CHECK_THROWS_AS(k_min(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(k_min(1e9, -0.1), DomainError);
    CHECK_THROWS_AS(k_min(-1e9, 0.1), DomainError);
}

TEST_CASE("k_min is non-decreasing in frequency and radius")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> f(1e9, 300e9), r(0.01, 0.5);
    for (int i = 0; i < 500; ++i)
    {
        const double f0 = f(rng), R = r(rng);
        CHECK(k_min(f0 * 1.01, R) >= k_min(f0, R));
        CHECK(k_min(f0, R * 1.01) >= k_min(f0, R));
    }
}

TEST_CASE("max_doppler_delay_shift is half a sampling period")
{
    CHECK(max_doppler_delay_shift(2e9) == Approx(0.25e-9).epsilon(1e-15));
    CHECK(max_doppler_delay_shift(1e9) == Approx(0.5e-9).epsilon(1e-15));
    CHECK(max_doppler_delay_shift(500e6) == Approx(1.0e-9).epsilon(1e-15));
    CHECK_THROWS_AS(max_doppler_delay_shift(0.0), DomainError);
    CHECK_THROWS_AS(max_doppler_delay_shift(-1.0), DomainError);
}

TEST_CASE("full-scale presets carry the sounder and evaluation tables")
{
    const auto fr3 = preset("fr3_14ghz");
    CHECK(fr3.sounder.num_virtual_antennas == 1000);
    CHECK(fr3.sounder.vuca_radius == 0.144);
    CHECK(fr3.sounder.carrier_frequency == 14e9);
    CHECK(fr3.sounder.bandwidth == 2e9);
    CHECK(fr3.sounder.rx_sampling_rate == 2.5e9);
    CHECK(fr3.sounder.sequence_length == 1000000);
    CHECK(fr3.sounder.tx_antenna_gain_dbi == 4.0);
    CHECK(fr3.sounder.rx_antenna_gain_dbi == 4.0);
    CHECK(fr3.eval.spectral_filter_length == 85);
    CHECK(fr3.eval.spectral_filter_alpha == 0.5);
    CHECK(fr3.eval.delay_oversampling == 4);
    CHECK(fr3.eval.freq_window_psl_db == 70.0);
    CHECK(fr3.eval.freq_window_alpha == 1.0);
    CHECK(fr3.eval.relative_threshold_db == 25.0);
    CHECK(fr3.eval.delay_cluster_grid == Approx(0.25e-9).epsilon(1e-12));
    CHECK(fr3.eval.angular_cluster_grid_deg == 6.0);
    CHECK(fr3.eval.music_grid_resolution_deg == 0.05);

    const auto sub = preset("subthz_160ghz");
    CHECK(sub.sounder.num_virtual_antennas == 1440);
    CHECK(sub.sounder.vuca_radius == 0.085);
    CHECK(sub.sounder.rx_antenna_gain_dbi == 9.0);
    CHECK(sub.sounder.tx_antenna_gain_dbi == 7.0);
    CHECK(sub.eval.spectral_filter_length == 571);
}

TEST_CASE("L_D of every preset equals k_min of its sounder")
{
    for (const auto &name : preset_names())
    {
        const auto p = preset(name);
        INFO(name);
        CHECK(p.eval.spectral_filter_length == k_min(p.sounder.carrier_frequency, p.sounder.vuca_radius));
        CHECK_NOTHROW(p.eval.validate(p.sounder));
    }
}

TEST_CASE("desk presets shrink the sequence and keep K = 4 K_min")
{
    const auto d = preset("desk_fr3");
    CHECK(d.sounder.sequence_length == 8192);
    CHECK(d.sounder.bandwidth == 250e6);
    CHECK(d.sounder.rx_sampling_rate == Approx(312.5e6));
    CHECK(d.sounder.num_virtual_antennas == 4 * 85);
    CHECK(d.eval.delay_cluster_grid == Approx(2e-9));
    const auto s = preset("desk_subthz");
    CHECK(s.sounder.num_virtual_antennas == 4 * 571);
}

TEST_CASE("unknown preset names are rejected")
{
    CHECK_THROWS_AS(preset("fr2"), SchemaError);
}

TEST_CASE("sounder validation names the offending field")
{
    auto s = preset("desk_fr3").sounder;
    s.bandwidth = s.rx_sampling_rate * 2.0;
    try
    {
        s.validate();
        FAIL("expected a SchemaError");
    }
    catch (const SchemaError &e)
    {
        CHECK(e.path() == "rx_sampling_rate");
    }
    s = preset("desk_fr3").sounder;
    s.arc_coverage_deg = 0.0;
    CHECK_THROWS_AS(s.validate(), SchemaError);
    s.arc_coverage_deg = 361.0;
    CHECK_THROWS_AS(s.validate(), SchemaError);
    s = preset("desk_fr3").sounder;
    s.sequence_length = 1;
    CHECK_THROWS_AS(s.validate(), SchemaError);
}

TEST_CASE("eval validation enforces L_D <= K")
{
    auto p = preset("desk_fr3");
    p.eval.spectral_filter_length = p.sounder.num_virtual_antennas + 1;
    CHECK_THROWS_AS(p.eval.validate(p.sounder), SchemaError);
    p = preset("desk_fr3");
    p.eval.delay_oversampling = 0;
    CHECK_THROWS_AS(p.eval.validate(), SchemaError);
    p = preset("desk_fr3");
    p.eval.relative_threshold_db = 0.0;
    CHECK_THROWS_AS(p.eval.validate(), SchemaError);
}

TEST_CASE("cosine-power pattern normalisation")
{
    const auto p = AntennaPattern::cosine_power(4.0);
    CHECK(p.exponent == Approx(std::pow(10.0, 0.4) - 1.0));
    CHECK(p.power_gain(0.0) == Approx(std::pow(10.0, 0.4)));
    CHECK(p.power_gain(60.0) == Approx(std::pow(10.0, 0.4) * std::pow(0.5, p.exponent)));
    CHECK(p.power_gain(120.0) == 0.0);
    CHECK(p.power_gain(-60.0) == Approx(p.power_gain(60.0)));

    // gains below 0 dBi clamp the exponent at zero
    CHECK(AntennaPattern::cosine_power(-3.0).exponent == 0.0);

    const auto fb = AntennaPattern::cosine_power(9.0, -1.0, 20.0);
    CHECK(fb.power_gain(180.0) == Approx(std::pow(10.0, 0.9) * 0.01));

    const auto iso = AntennaPattern::isotropic(3.0);
    CHECK(iso.power_gain(77.0) == Approx(std::pow(10.0, 0.3)));
}

TEST_CASE("scene validation")
{
    Scene s;
    s.tx_rx_distance = 3.0;
    const double los = 3.0 / kSpeedOfLight;
    s.paths = {{los, 10.0, {1e-3, 0.0}}, {los + 5e-9, 200.0, {0.0, 1e-4}}};
    CHECK_NOTHROW(s.validate());

    auto early = s;
    early.paths[0].delay = los * 0.5;
    CHECK_THROWS_AS(early.validate(), SchemaError);

    auto unsorted = s;
    std::swap(unsorted.paths[0], unsorted.paths[1]);
    CHECK_THROWS_AS(unsorted.validate(), SchemaError);
    unsorted.sort_paths();
    CHECK_NOTHROW(unsorted.validate());

    auto az = s;
    az.paths[1].azimuth_deg = 360.0;
    CHECK_THROWS_AS(az.validate(), SchemaError);

    auto zero = s;
    zero.paths[1].gain = 0.0;
    CHECK_THROWS_AS(zero.validate(), SchemaError);

    Scene empty;
    CHECK_NOTHROW(empty.validate());
}

TEST_CASE("angle helpers")
{
    CHECK(wrap_degrees(-1.0) == Approx(359.0));
    CHECK(wrap_degrees(720.0) == 0.0);
    CHECK(wrap_degrees(-1e-18) < 360.0);
    CHECK(wrap_degrees_signed(270.0) == Approx(-90.0));
    CHECK(wrap_degrees_signed(180.0) == 180.0);
    CHECK(wrap_degrees_signed(-180.0) == 180.0);
    CHECK(circular_distance_deg(359.95, 0.0) == Approx(0.05));
    CHECK(circular_distance_deg(10.0, 190.0) == Approx(180.0));
}
