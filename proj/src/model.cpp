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

#include "vuca/model.hpp"
#include "vuca/error.hpp"

#include <algorithm>
#include <cmath>

namespace vuca
{
    namespace
    {
        void require(bool ok, const char *field, const char *msg)
        {
            if (!ok)
                throw SchemaError(field, msg);
        }
    }

    void SounderConfig::validate() const
    {
        require(std::isfinite(carrier_frequency) && carrier_frequency > 0.0, "carrier_frequency", "must be > 0");
        require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth", "must be > 0");
        require(std::isfinite(rx_sampling_rate) && rx_sampling_rate >= bandwidth, "rx_sampling_rate",
                "must be >= bandwidth");
        require(sequence_length >= 2, "sequence_length", "must be >= 2");
        require(num_virtual_antennas >= 1, "num_virtual_antennas", "must be >= 1");
        require(std::isfinite(sequence_duration) && sequence_duration > 0.0, "sequence_duration", "must be > 0");
        require(std::isfinite(vuca_radius) && vuca_radius > 0.0, "vuca_radius", "must be > 0");
        require(arc_coverage_deg > 0.0 && arc_coverage_deg <= 360.0, "arc_coverage", "must be in (0, 360]");
        require(std::isfinite(tx_antenna_gain_dbi), "tx_antenna_gain", "must be finite");
        require(std::isfinite(rx_antenna_gain_dbi), "rx_antenna_gain", "must be finite");
        require(in_band_bins() >= 1, "bandwidth", "occupies no DFT bin at this sequence length");
    }

    std::size_t SounderConfig::in_band_bins() const
    {
        return static_cast<std::size_t>(std::llround(static_cast<double>(sequence_length) * bandwidth / rx_sampling_rate));
    }

    void EvalConfig::validate() const
    {
        require(delay_oversampling >= 1, "delay_oversampling", "must be >= 1");
        require(freq_window_psl_db > 0.0, "freq_window_psl", "must be > 0");
        require(freq_window_alpha >= 0.0, "freq_window_alpha", "must be >= 0");
        require(spectral_filter_length >= 1, "spectral_filter_length", "must be >= 1");
        require(spectral_filter_alpha >= 0.0 && spectral_filter_alpha <= 1.0, "spectral_filter_alpha",
                "must be in [0, 1]");
        require(relative_threshold_db > 0.0, "relative_threshold", "must be > 0");
        require(delay_cluster_grid > 0.0, "delay_cluster_grid", "must be > 0");
        require(angular_cluster_grid_deg > 0.0, "angular_cluster_grid", "must be > 0");
        require(music_grid_resolution_deg > 0.0 && music_grid_resolution_deg <= 90.0, "music_grid_resolution",
                "must be in (0, 90]");
    }

    void EvalConfig::validate(const SounderConfig &sounder) const
    {
        validate();
        require(spectral_filter_length <= sounder.num_virtual_antennas, "spectral_filter_length",
                "must not exceed num_virtual_antennas");
    }

    AntennaPattern AntennaPattern::isotropic(double gain_dbi)
    {
        AntennaPattern p;
        p.kind = AntennaKind::isotropic;
        p.boresight_gain_dbi = gain_dbi;
        return p;
    }

    AntennaPattern AntennaPattern::cosine_power(double boresight_gain_dbi, double exponent, double front_to_back_db)
    {
        AntennaPattern p;
        p.kind = AntennaKind::cosine_power;
        p.boresight_gain_dbi = boresight_gain_dbi;
        p.exponent = exponent >= 0.0 ? exponent : std::max(from_db(boresight_gain_dbi) - 1.0, 0.0);
        p.front_to_back_db = front_to_back_db;
        return p;
    }

    void AntennaPattern::validate() const
    {
        require(std::isfinite(boresight_gain_dbi), "boresight_gain", "must be finite");
        require(std::isfinite(exponent) && exponent >= 0.0, "exponent", "must be >= 0");
        require(front_to_back_db > 0.0, "front_to_back", "must be > 0");
    }

    double AntennaPattern::boresight_power_gain() const
    {
        return from_db(boresight_gain_dbi);
    }

    double AntennaPattern::power_gain(double offset_deg) const
    {
        const double g0 = boresight_power_gain();
        if (kind == AntennaKind::isotropic)
            return g0;

        const double c = std::cos(offset_deg * kPi / 180.0);
        double shape = c > 0.0 ? std::pow(c, exponent) : 0.0;
        if (std::isfinite(front_to_back_db))
            shape = std::max(shape, from_db(-front_to_back_db));
        return g0 * shape;
    }

    void Scene::validate() const
    {
        rotating_antenna_pattern.validate();
        require(std::isfinite(tx_rx_distance) && tx_rx_distance >= 0.0, "tx_rx_distance", "must be >= 0");
        require(!std::isnan(noise_floor_db) && noise_floor_db < 0.0, "noise_floor", "must be below 0 dB");

        const double los_delay = tx_rx_distance / kSpeedOfLight;
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            const auto &p = paths[i];
            const std::string at = "paths[" + std::to_string(i) + "]";
            if (!(std::isfinite(p.delay) && p.delay >= 0.0))
                throw SchemaError(at + ".delay", "must be finite and >= 0");
            // 1 ps slack absorbs rounding of delays written as d/c in text files
            if (p.delay < los_delay - 1e-12)
                throw SchemaError(at + ".delay", "earlier than the line-of-sight delay d/c");
            if (!(p.azimuth_deg >= 0.0 && p.azimuth_deg < 360.0))
                throw SchemaError(at + ".azimuth", "must be in [0, 360)");
            if (!(std::abs(p.gain) > 0.0) || !std::isfinite(std::abs(p.gain)))
                throw SchemaError(at + ".gain", "magnitude must be finite and > 0");
            if (i > 0 && p.delay < paths[i - 1].delay)
                throw SchemaError(at + ".delay", "paths must be sorted by delay");
        }
    }

    void Scene::sort_paths()
    {
        std::stable_sort(paths.begin(), paths.end(),
                         [](const GroundTruthPath &a, const GroundTruthPath &b) { return a.delay < b.delay; });
    }

    std::size_t k_min(double carrier_frequency, double vuca_radius)
    {
        if (!(carrier_frequency > 0.0) || !(vuca_radius > 0.0) || !std::isfinite(carrier_frequency) ||
            !std::isfinite(vuca_radius))
            throw DomainError("k_min: carrier frequency and radius must be positive");
        const double lambda = kSpeedOfLight / carrier_frequency;
        // a relative 1e-12 slack keeps exact integers (lambda0 = 4 pi R_A / n) from rounding up
        return static_cast<std::size_t>(std::ceil(4.0 * kPi * vuca_radius / lambda * (1.0 - 1e-12)));
    }

    double max_doppler_delay_shift(double bandwidth)
    {
        if (!(bandwidth > 0.0))
            throw DomainError("max_doppler_delay_shift: bandwidth must be positive");
        return 1.0 / (2.0 * bandwidth);
    }

    EvalConfig default_eval(const SounderConfig &sounder)
    {
        EvalConfig e;
        e.delay_oversampling = 4;
        e.freq_window_psl_db = 70.0;
        e.freq_window_alpha = 1.0;
        e.spectral_filter_length = k_min(sounder.carrier_frequency, sounder.vuca_radius);
        e.spectral_filter_alpha = 0.5;
        e.relative_threshold_db = 25.0;
        e.delay_cluster_grid = max_doppler_delay_shift(sounder.bandwidth);
        e.angular_cluster_grid_deg = 6.0;
        e.music_grid_resolution_deg = 0.05;
        return e;
    }

    namespace
    {
        Preset fr3_14ghz()
        {
            SounderConfig s;
            s.name = "fr3_14ghz";
            s.carrier_frequency = 14e9;
            s.bandwidth = 2e9;
            s.rx_sampling_rate = 2.5e9;
            s.sequence_length = 1000000;
            s.num_virtual_antennas = 1000;
            s.sequence_duration = 500e-6;
            s.vuca_radius = 0.144;
            s.tx_power_dbm = 10.0;
            s.tx_antenna_gain_dbi = 4.0;
            s.rx_antenna_gain_dbi = 4.0;
            return {s, default_eval(s)};
        }

        Preset subthz_160ghz()
        {
            SounderConfig s;
            s.name = "subthz_160ghz";
            s.carrier_frequency = 160e9;
            s.bandwidth = 2e9;
            s.rx_sampling_rate = 2.5e9;
            s.sequence_length = 1000000;
            s.num_virtual_antennas = 1440;
            s.sequence_duration = 500e-6;
            s.vuca_radius = 0.085;
            s.tx_power_dbm = 1.0;
            s.tx_antenna_gain_dbi = 7.0;
            s.rx_antenna_gain_dbi = 9.0;
            return {s, default_eval(s)};
        }
    }

    Preset desk_scale(const Preset &full, std::size_t sequence_length)
    {
        Preset p = full;
        auto &s = p.sounder;
        s.name = "desk_" + full.sounder.name;
        s.sequence_length = sequence_length;
        s.bandwidth = 250e6;
        s.rx_sampling_rate = s.bandwidth * full.sounder.rx_sampling_rate / full.sounder.bandwidth;
        s.sequence_duration = static_cast<double>(sequence_length) / s.bandwidth;
        s.num_virtual_antennas = 4 * k_min(s.carrier_frequency, s.vuca_radius);
        p.eval = default_eval(s);
        return p;
    }

    std::vector<std::string> preset_names()
    {
        return {"fr3_14ghz", "subthz_160ghz", "desk_fr3", "desk_subthz"};
    }

    Preset preset(std::string_view name)
    {
        if (name == "fr3_14ghz")
            return fr3_14ghz();
        if (name == "subthz_160ghz")
            return subthz_160ghz();
        if (name == "desk_fr3")
        {
            auto p = desk_scale(fr3_14ghz(), 8192);
            p.sounder.name = "desk_fr3";
            return p;
        }
        if (name == "desk_subthz")
        {
            // K = 4 * 571 rows: the sequence is shortened to keep the processed IDSF in memory
            auto p = desk_scale(subthz_160ghz(), 1024);
            p.sounder.name = "desk_subthz";
            return p;
        }
        throw SchemaError("preset", "unknown preset '" + std::string(name) + "'");
    }

    double wrap_degrees(double deg)
    {
        double w = std::fmod(deg, 360.0);
        if (w < 0.0)
            w += 360.0;
        if (w >= 360.0)
            w -= 360.0;
        return w;
    }

    double wrap_degrees_signed(double deg)
    {
        double w = wrap_degrees(deg);
        return w > 180.0 ? w - 360.0 : w;
    }

    double circular_distance_deg(double a, double b)
    {
        return std::abs(wrap_degrees_signed(a - b));
    }
}
