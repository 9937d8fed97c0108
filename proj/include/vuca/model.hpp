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

#ifndef VUCA_MODEL_HPP
#define VUCA_MODEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace vuca
{
    using cd = std::complex<double>;

    inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kInf = std::numeric_limits<double>::infinity();

    inline constexpr const char *kSchemaVersion = "vuca-1";

    // Parameters of the sounder hardware and of the virtual array (SI units, gains in dBi)
    struct SounderConfig
    {
        std::string name = "custom";
        double carrier_frequency = 0.0;      // f0 [Hz]
        double bandwidth = 0.0;              // B [Hz]
        double rx_sampling_rate = 0.0;       // fS [Hz]
        std::size_t sequence_length = 0;     // M, samples per sounding period
        std::size_t num_virtual_antennas = 0; // K
        double sequence_duration = 0.0;      // duration of one sequence [s]
        double vuca_radius = 0.0;            // R_A [m]
        double tx_power_dbm = 0.0;
        double tx_antenna_gain_dbi = 0.0;
        double rx_antenna_gain_dbi = 0.0;
        double arc_coverage_deg = 360.0;

        void validate() const; // throws SchemaError naming the field

        double wavelength() const { return kSpeedOfLight / carrier_frequency; }

        // Number of DFT bins of one sounding period that fall into the measurement band, round(M*B/fS)
        std::size_t in_band_bins() const;

        // Total measurement time K * T_s
        double measurement_time() const { return static_cast<double>(num_virtual_antennas) * sequence_duration; }
    };

    // Post-processing and estimation settings
    struct EvalConfig
    {
        std::size_t delay_oversampling = 4;
        double freq_window_psl_db = 70.0;
        double freq_window_alpha = 1.0;        // ultraspherical slope taper
        std::size_t spectral_filter_length = 0; // L_D
        double spectral_filter_alpha = 0.5;    // Tukey taper fraction
        double relative_threshold_db = 25.0;
        double delay_cluster_grid = 0.25e-9;   // [s]
        double angular_cluster_grid_deg = 6.0;
        double music_grid_resolution_deg = 0.05;

        void validate() const;
        void validate(const SounderConfig &sounder) const; // also checks L_D <= K
    };

    struct Preset
    {
        SounderConfig sounder;
        EvalConfig eval;
    };

    enum class AntennaKind
    {
        isotropic,
        cosine_power
    };

    // Azimuth power pattern of the rotating antenna, boresight pointing radially outward.
    // cosine_power: G(x) = G0 * cos(x)^q on the front half-plane, zero behind unless a finite
    // front-to-back ratio is given, in which case the pattern is floored at G0 / FB.
    struct AntennaPattern
    {
        AntennaKind kind = AntennaKind::isotropic;
        double boresight_gain_dbi = 0.0;
        double exponent = 0.0;             // q, cosine_power only
        double front_to_back_db = kInf;

        static AntennaPattern isotropic(double gain_dbi = 0.0);

        // q defaults to max(10^(dBi/10) - 1, 0)
        static AntennaPattern cosine_power(double boresight_gain_dbi, double exponent = -1.0,
                                           double front_to_back_db = kInf);

        void validate() const;

        double boresight_power_gain() const;

        // Linear power gain for a wave arriving 'offset_deg' away from boresight
        double power_gain(double offset_deg) const;
    };

    struct GroundTruthPath
    {
        double delay = 0.0;       // [s]
        double azimuth_deg = 0.0; // [0, 360)
        cd gain{1.0, 0.0};        // linear complex amplitude
    };

    struct Scene
    {
        std::vector<GroundTruthPath> paths; // sorted by delay
        double tx_rx_distance = 0.0;        // [m]
        double noise_floor_db = -kInf;      // processed channel-gain scale; -inf disables noise
        AntennaPattern rotating_antenna_pattern;

        void validate() const;
        void sort_paths();
    };

    // Minimum number of virtual antennas for an alias-free circular array, ceil(4 pi R_A / lambda0)
    std::size_t k_min(double carrier_frequency, double vuca_radius);

    // Largest delay shift of a CIR caused by the continuous rotation, 1 / (2B)
    double max_doppler_delay_shift(double bandwidth);

    // Named parameter sets: "fr3_14ghz", "subthz_160ghz" (full scale) and
    // "desk_fr3", "desk_subthz" (reduced sequence length and bandwidth for fast runs)
    Preset preset(std::string_view name);
    std::vector<std::string> preset_names();

    // Reduced-scale variant of a full configuration: M, B, fS shrink, K = 4 * K_min
    Preset desk_scale(const Preset &full, std::size_t sequence_length);

    // Evaluation parameters matched to a sounder configuration (L_D = K_min, delay grid = 1/(2B))
    EvalConfig default_eval(const SounderConfig &sounder);

    double wrap_degrees(double deg);                  // -> [0, 360)
    double wrap_degrees_signed(double deg);           // -> (-180, 180]
    double circular_distance_deg(double a, double b); // in [0, 180]

    inline double to_db(double linear) { return 10.0 * std::log10(linear); }
    inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
}

#endif
