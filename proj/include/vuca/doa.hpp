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

#ifndef VUCA_DOA_HPP
#define VUCA_DOA_HPP

#include "vuca/idsf.hpp"
#include "vuca/model.hpp"
#include "vuca/pipeline.hpp"

#include <span>
#include <string>
#include <vector>

namespace vuca
{
    // Delay bins whose envelope is within 'relative_threshold_db' of the envelope maximum
    std::vector<std::size_t> threshold_bins(std::span<const double> envelope, double relative_threshold_db);

    // Phase-mode (beamspace) representation of one delay column, compensated so that a single
    // plane wave from azimuth phi becomes the steering vector exp(j m phi), up to a common factor.
    struct ModeVector
    {
        std::vector<int> modes;   // retained mode indices
        std::vector<cd> values;   // compensated coefficient per retained mode
        std::vector<int> excluded; // modes dropped because the array response is (near) zero there
    };

    // Maps a column of K antenna samples to modes |m| <= floor(beta), beta = 2 pi R_A / lambda0:
    //
    //   X_m = (1 / K_full) sum_k s_k exp(j m psi_k),   K_full = K * 360 / arc
    //
    // and divides by the response r_m of a unit plane wave from 0 deg seen through the rotating
    // antenna pattern on the same antenna positions. For an isotropic pattern r_m = j^m J_m(beta).
    // Modes with |r_m| < 1e-3 max |r| are excluded. A partial arc is zero-filled (best effort).
    //
    // Throws DomainError when K_full < K_min (the transform would alias).
    class BeamspaceTransform
    {
    public:
        BeamspaceTransform(std::vector<double> antenna_azimuths_deg, double arc_coverage_deg, double carrier_frequency,
                           double vuca_radius, const AntennaPattern &pattern = AntennaPattern::isotropic());

        ModeVector apply(std::span<const cd> column) const;

        // Uncompensated transform of a column, all modes -max_mode..max_mode
        std::vector<cd> raw_modes(std::span<const cd> column) const;

        int max_mode() const { return max_mode_; }
        const std::vector<cd> &reference() const { return reference_; } // r_m, index m + max_mode

    private:
        std::vector<double> azimuths_rad_;
        double k_full_;
        int max_mode_;
        std::vector<cd> reference_;
        std::vector<int> kept_;
        std::vector<int> excluded_;
    };

    struct MusicEstimate
    {
        double azimuth_deg = 0.0;  // [0, 360)
        double peak_quality = 0.0; // pseudo-spectrum peak over its median
    };

    // Single-source MUSIC on a compensated mode vector. With unit vector u over the retained modes
    // the correlation c(phi) = |sum_m u_m exp(-j m phi)|^2 / N_m lies in [0, 1] and the
    // pseudo-spectrum is 1 / (1 - c). The grid maximum is refined by a parabola through c.
    class MusicEstimator
    {
    public:
        explicit MusicEstimator(double grid_resolution_deg); // grid of round(360 / res) points

        MusicEstimate estimate(const ModeVector &mv) const;

        // Pseudo-spectrum in dB on the grid, azimuth g * 360 / grid_size()
        std::vector<double> pseudo_spectrum_db(const ModeVector &mv) const;

        std::size_t grid_size() const { return grid_; }

    private:
        std::vector<double> correlation(const ModeVector &mv) const;
        std::size_t grid_;
    };

    struct DelayBinEstimate
    {
        std::size_t delay_index = 0;
        double delay = 0.0;        // [s]
        double azimuth_deg = 0.0;  // [0, 360)
        double power = 0.0;        // envelope value (linear)
        double peak_quality = 0.0; // MUSIC peak over median
    };

    // Thresholds the envelope and estimates one azimuth per retained delay bin. When
    // 'spectrum_csv' is non-empty every pseudo-spectrum is dumped there
    // (delay_ns, azimuth_deg, spectrum_db).
    std::vector<DelayBinEstimate> estimate_delay_bins(const Idsf &processed, const Envelope &env, const EvalConfig &eval,
                                                      const AntennaPattern &pattern,
                                                      const std::string &spectrum_csv = {});
}

#endif
