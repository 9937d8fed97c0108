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

#ifndef VUCA_PARAMS_HPP
#define VUCA_PARAMS_HPP

#include "vuca/cluster.hpp"
#include "vuca/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vuca
{
    // Large-scale parameters of one path set
    struct ChannelParams
    {
        std::size_t num_paths = 0;
        double total_power = 0.0;        // sum P_l (linear)
        double path_loss_db = 0.0;       // -10 log10(total_power)
        double k_factor = kInf;          // sum P / sum_{l>=2} P, path 1 = earliest; +inf for a single path
        double k_factor_std = kInf;      // P_1 / sum_{l>=2} P (the usual Rician definition, = k_factor - 1)
        double rms_delay_spread = 0.0;   // [s]
        double rms_angular_spread_deg = 0.0;
        double mean_delay = 0.0;         // [s]
        double mean_azimuth_deg = 0.0;   // circular power-weighted mean, [0, 360)
    };

    double total_power(std::span<const EstimatedPath> paths);
    double path_loss_db(std::span<const EstimatedPath> paths);

    // Power of the first-arriving (LoS candidate) path against the sum of all the others;
    // paths need not be sorted
    double k_factor(std::span<const EstimatedPath> paths);
    double k_factor_std(std::span<const EstimatedPath> paths);

    // sqrt(sum P tau^2 / sum P - (sum P tau / sum P)^2)
    double rms_delay_spread(std::span<const EstimatedPath> paths);

    // Circular spread sqrt(-2 ln |sum P exp(j phi)| / sum P) in degrees (0 for one path)
    double rms_angular_spread_deg(std::span<const EstimatedPath> paths);

    // Throws DomainError for an empty set or non-positive total power
    ChannelParams compute_params(const PathSet &set);

    // Close-in reference path-loss fit with the free-space loss at 1 m as anchor:
    //   PL_hat(d) = PL(d) - G_Tx - G_Rx
    //   PL_hat(d) = FSPL(1 m) + 10 n log10(d),   FSPL(1 m) = 20 log10(4 pi / lambda0)
    // solved for n in the least-squares sense.
    struct CiFit
    {
        double exponent = 0.0; // n
        double fspl_1m_db = 0.0;
        double residual_rms_db = 0.0;
        std::size_t num_points = 0;
    };

    // Throws DomainError for distances below 1 m, mismatched inputs or fewer than 2 points
    CiFit ci_fit(std::span<const double> distances_m, std::span<const double> path_loss_db, double carrier_frequency,
                 double tx_antenna_gain_dbi, double rx_antenna_gain_dbi);

    // Minimum and maximum of each parameter over a set of positions
    struct ParamsSummary
    {
        ChannelParams min;
        ChannelParams max;
        std::size_t num_points = 0;
        std::size_t finite_k_points = 0; // positions with more than one path
    };

    ParamsSummary summarize(std::span<const ChannelParams> points);

    // params.csv: K-factors in dB, an unbounded K written as inf
    struct ParamsRow
    {
        std::string label;
        double distance_m = 0.0;
        ChannelParams params;
    };

    // Per-position rows followed by "min" and "max" rows

    void write_params_csv(const std::string &path, std::span<const ParamsRow> rows);
}

#endif
