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

#include "vuca/cluster.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace vuca
{
    double angular_cell_deg(double azimuth_deg, double grid_deg)
    {
        if (!(grid_deg > 0.0) || !std::isfinite(azimuth_deg))
            throw DomainError("angular_cell_deg: grid must be > 0 and azimuth finite");
        const double a = wrap_degrees_signed(azimuth_deg);
        const double q = a / grid_deg;
        double r = std::round(q); // halfway cases round away from zero
        if (std::abs(q - std::trunc(q)) == 0.5)
            r = std::trunc(q);
        return wrap_degrees(r * grid_deg);
    }

    PathSet cluster_paths(std::span<const DelayBinEstimate> bins, double delay_grid, double angular_grid_deg)
    {
        if (!(delay_grid > 0.0) || !(angular_grid_deg > 0.0))
            throw DomainError("cluster_paths: grids must be > 0");

        PathSet set;
        set.delay_cluster_grid = delay_grid;
        set.angular_cluster_grid_deg = angular_grid_deg;

        // bins by cell, cells keyed by their index on the signed scale so the map order is stable
        std::map<long long, std::vector<std::size_t>> cells;
        for (std::size_t i = 0; i < bins.size(); ++i)
        {
            const double c = wrap_degrees_signed(angular_cell_deg(bins[i].azimuth_deg, angular_grid_deg));
            cells[std::llround(c / angular_grid_deg)].push_back(i);
        }

        // neighbour lookup for the delay refinement, over all bins
        std::map<std::size_t, const DelayBinEstimate *> by_index;
        for (const auto &b : bins)
            by_index[b.delay_index] = &b;

        const double tol = delay_grid * (1.0 + 1e-9);
        for (auto &[key, idx] : cells)
        {
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return bins[a].delay < bins[b].delay; });
            std::size_t start = 0;
            while (start < idx.size())
            {
                std::size_t end = start + 1;
                while (end < idx.size() && bins[idx[end]].delay - bins[idx[end - 1]].delay <= tol)
                    ++end;

                std::size_t best = idx[start];
                for (std::size_t j = start; j < end; ++j)
                    if (bins[idx[j]].power > bins[best].power)
                        best = idx[j];

                const auto &b = bins[best];
                EstimatedPath p;
                p.azimuth_deg = b.azimuth_deg;
                p.power = b.power;
                p.delay = b.delay;
                auto lo = b.delay_index > 0 ? by_index.find(b.delay_index - 1) : by_index.end();
                auto hi = by_index.find(b.delay_index + 1);
                if (lo != by_index.end() && hi != by_index.end() && lo->second->power > 0.0 &&
                    hi->second->power > 0.0)
                {
                    const double ym = to_db(lo->second->power), y0 = to_db(b.power), yp = to_db(hi->second->power);
                    const double den = ym - 2.0 * y0 + yp;
                    if (den < 0.0 && y0 >= ym && y0 >= yp)
                    {
                        const double delta = 0.5 * (ym - yp) / den;
                        p.delay = b.delay + delta * 0.5 * (hi->second->delay - lo->second->delay);
                    }
                }
                set.paths.push_back(p);
                start = end;
            }
        }

        std::sort(set.paths.begin(), set.paths.end(), [](const EstimatedPath &a, const EstimatedPath &b) {
            return a.delay != b.delay ? a.delay < b.delay : a.azimuth_deg < b.azimuth_deg;
        });
        return set;
    }

    PathSet compensate_antenna_gain(const PathSet &set, const AntennaPattern &pattern)
    {
        if (set.gain_compensated)
            throw DomainError("compensate_antenna_gain: path set is already gain compensated");
        if (!std::isfinite(pattern.boresight_gain_dbi))
            throw DomainError("compensate_antenna_gain: boresight gain must be finite");
        PathSet out = set;
        const double g = pattern.boresight_power_gain();
        for (auto &p : out.paths)
            p.power /= g;
        out.gain_compensated = true;
        out.compensated_gain_dbi = pattern.boresight_gain_dbi;
        return out;
    }

    void write_paths_csv(const std::string &path, const PathSet &set)
    {
        std::ostringstream out;
        out << "delay_ns,azimuth_deg,power_db\n";
        for (const auto &p : set.paths)
            out << format_number(p.delay * 1e9) << ',' << format_number(p.azimuth_deg) << ','
                << format_number(to_db(p.power)) << '\n';
        write_text_atomic(path, out.str());
    }
}
