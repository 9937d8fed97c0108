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

#ifndef VUCA_CLUSTER_HPP
#define VUCA_CLUSTER_HPP

#include "vuca/doa.hpp"
#include "vuca/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace vuca
{
    struct EstimatedPath
    {
        double delay = 0.0;       // [s]
        double azimuth_deg = 0.0; // [0, 360)
        double power = 0.0;       // linear
    };

    struct PathSet
    {
        std::vector<EstimatedPath> paths; // sorted by delay
        std::string config_name;
        double relative_threshold_db = 0.0;
        double delay_cluster_grid = 0.0;
        double angular_cluster_grid_deg = 0.0;
        bool gain_compensated = false;
        double compensated_gain_dbi = 0.0; // removed gain when gain_compensated
        double arc_coverage_deg = 360.0;   // below 360 the azimuths are best effort
        double envelope_floor_db = -kInf;  // median envelope of the processed capture
        bool near_floor = false;           // strongest bin within the relative threshold of the floor
    };

    // Centre of the angular cell containing 'azimuth_deg', cells of width 'grid_deg' centred on
    // multiples of the grid. The azimuth is taken on (-180, 180]; an exact half-cell tie goes to the
    // cell nearer 0 deg. Result in [0, 360).
    double angular_cell_deg(double azimuth_deg, double grid_deg);

    // Groups bins sharing an angular cell whose delays are consecutive (gaps of at most
    // 'delay_grid') into one path. Each path keeps the strongest bin: its power, its unrounded
    // azimuth and its delay refined by a parabola through the dB powers of the neighbouring
    // delay bins. Output sorted by delay, then azimuth.
    PathSet cluster_paths(std::span<const DelayBinEstimate> bins, double delay_grid, double angular_grid_deg);

    // Divides every path power by the rotating antenna's boresight gain (the envelope maximum is read at
    // best alignment). Throws DomainError when the set is already compensated.
    PathSet compensate_antenna_gain(const PathSet &set, const AntennaPattern &pattern);

    // delay_ns, azimuth_deg, power_db
    void write_paths_csv(const std::string &path, const PathSet &set);
}

#endif
