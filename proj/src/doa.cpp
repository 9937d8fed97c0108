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

#include "vuca/doa.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"
#include "vuca/fft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vuca
{
    std::vector<std::size_t> threshold_bins(std::span<const double> envelope, double relative_threshold_db)
    {
        if (!(relative_threshold_db > 0.0))
            throw DomainError("threshold_bins: threshold must be > 0 dB");
        std::vector<std::size_t> out;
        if (envelope.empty())
            return out;
        const double mx = *std::max_element(envelope.begin(), envelope.end());
        if (!(mx > 0.0))
            return out;
        const double level = mx * from_db(-relative_threshold_db);
        for (std::size_t n = 0; n < envelope.size(); ++n)
            if (envelope[n] >= level)
                out.push_back(n);
        return out;
    }

    BeamspaceTransform::BeamspaceTransform(std::vector<double> antenna_azimuths_deg, double arc_coverage_deg,
                                           double carrier_frequency, double vuca_radius, const AntennaPattern &pattern)
    {
        if (antenna_azimuths_deg.empty())
            throw DomainError("BeamspaceTransform: no antennas");
        if (!(arc_coverage_deg > 0.0 && arc_coverage_deg <= 360.0))
            throw DomainError("BeamspaceTransform: arc coverage must be in (0, 360]");
        pattern.validate();

        const std::size_t K = antenna_azimuths_deg.size();
        k_full_ = static_cast<double>(K) * 360.0 / arc_coverage_deg;
        const std::size_t kmin = k_min(carrier_frequency, vuca_radius);
        if (k_full_ + 1e-9 < static_cast<double>(kmin))
            throw DomainError("BeamspaceTransform: " + std::to_string(K) + " virtual antennas over " +
                              std::to_string(arc_coverage_deg) + " deg is below the minimum of " +
                              std::to_string(kmin) + " for a full circle, phase modes would alias");

        const double beta = 2.0 * kPi * vuca_radius * carrier_frequency / kSpeedOfLight;
        max_mode_ = static_cast<int>(std::floor(beta));

        azimuths_rad_.resize(K);
        for (std::size_t k = 0; k < K; ++k)
            azimuths_rad_[k] = antenna_azimuths_deg[k] * kPi / 180.0;

        // Unit plane wave from 0 deg, pattern normalized to boresight
        std::vector<cd> ref_column(K);
        const double g0 = pattern.boresight_power_gain();
        for (std::size_t k = 0; k < K; ++k)
        {
            const double amp = std::sqrt(pattern.power_gain(-antenna_azimuths_deg[k]) / g0);
            ref_column[k] = amp * std::polar(1.0, beta * std::cos(azimuths_rad_[k]));
        }
        reference_ = raw_modes(ref_column);

        double rmax = 0.0;
        for (const auto &r : reference_)
            rmax = std::max(rmax, std::abs(r));
        for (int m = -max_mode_; m <= max_mode_; ++m)
        {
            if (std::abs(reference_[static_cast<std::size_t>(m + max_mode_)]) >= 1e-3 * rmax)
                kept_.push_back(m);
            else
                excluded_.push_back(m);
        }
        if (kept_.empty())
            throw NumericError("BeamspaceTransform: array response vanishes in every mode");
    }

    std::vector<cd> BeamspaceTransform::raw_modes(std::span<const cd> column) const
    {
        if (column.size() != azimuths_rad_.size())
            throw DomainError("BeamspaceTransform: column length does not match the antenna count");
        const std::size_t nm = static_cast<std::size_t>(2 * max_mode_ + 1);
        std::vector<cd> X(nm, cd{0.0, 0.0});
        for (std::size_t k = 0; k < column.size(); ++k)
        {
            // exp(j m psi) for m = -max..max by recurrence from exp(-j max psi)
            const cd step = std::polar(1.0, azimuths_rad_[k]);
            cd e = std::polar(1.0, -static_cast<double>(max_mode_) * azimuths_rad_[k]);
            const cd s = column[k];
            for (std::size_t i = 0; i < nm; ++i)
            {
                X[i] += s * e;
                e *= step;
            }
        }
        for (auto &x : X)
            x /= k_full_;
        return X;
    }

    ModeVector BeamspaceTransform::apply(std::span<const cd> column) const
    {
        const auto X = raw_modes(column);
        ModeVector mv;
        mv.modes = kept_;
        mv.excluded = excluded_;
        mv.values.reserve(kept_.size());
        for (int m : kept_)
        {
            const auto i = static_cast<std::size_t>(m + max_mode_);
            mv.values.push_back(X[i] / reference_[i]);
        }
        return mv;
    }

    MusicEstimator::MusicEstimator(double grid_resolution_deg)
    {
        if (!(grid_resolution_deg > 0.0 && grid_resolution_deg <= 90.0))
            throw DomainError("MusicEstimator: grid resolution must be in (0, 90] deg");
        grid_ = static_cast<std::size_t>(std::llround(360.0 / grid_resolution_deg));
        grid_ = std::max<std::size_t>(grid_, 4);
    }

    std::vector<double> MusicEstimator::correlation(const ModeVector &mv) const
    {
        double norm2 = 0.0;
        for (const auto &v : mv.values)
            norm2 += std::norm(v);
        if (!(norm2 > 0.0) || !std::isfinite(norm2))
            throw NumericError("MusicEstimator: mode vector is zero or not finite");

        // sum_m u_m exp(-j 2 pi m g / G) is a forward DFT of u placed at m mod G
        std::vector<cd> buf(grid_, cd{0.0, 0.0});
        const double scale = 1.0 / std::sqrt(norm2);
        const auto G = static_cast<std::ptrdiff_t>(grid_);
        for (std::size_t i = 0; i < mv.modes.size(); ++i)
        {
            std::ptrdiff_t idx = mv.modes[i] % G;
            if (idx < 0)
                idx += G;
            buf[static_cast<std::size_t>(idx)] += mv.values[i] * scale;
        }
        fft::forward(buf);
        const double inv_n = 1.0 / static_cast<double>(mv.modes.size());
        std::vector<double> c(grid_);
        for (std::size_t g = 0; g < grid_; ++g)
            c[g] = std::min(std::norm(buf[g]) * inv_n, 1.0);
        return c;
    }

    namespace
    {
        double pseudo(double c) { return 1.0 / std::max(1.0 - c, 1e-15); }
    }

    MusicEstimate MusicEstimator::estimate(const ModeVector &mv) const
    {
        const auto c = correlation(mv);
        const std::size_t g = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
        const double cm = c[(g + grid_ - 1) % grid_];
        const double c0 = c[g];
        const double cp = c[(g + 1) % grid_];
        const double den = cm - 2.0 * c0 + cp;
        double delta = 0.0;
        if (den < 0.0)
            delta = std::clamp(0.5 * (cm - cp) / den, -0.5, 0.5);

        const double res = 360.0 / static_cast<double>(grid_);
        MusicEstimate est;
        est.azimuth_deg = wrap_degrees((static_cast<double>(g) + delta) * res);

        std::vector<double> s(grid_);
        for (std::size_t i = 0; i < grid_; ++i)
            s[i] = pseudo(c[i]);
        const double peak = s[g];
        auto mid = s.begin() + static_cast<std::ptrdiff_t>(grid_ / 2);
        std::nth_element(s.begin(), mid, s.end());
        est.peak_quality = peak / *mid;
        return est;
    }

    std::vector<double> MusicEstimator::pseudo_spectrum_db(const ModeVector &mv) const
    {
        const auto c = correlation(mv);
        std::vector<double> out(grid_);
        for (std::size_t i = 0; i < grid_; ++i)
            out[i] = to_db(pseudo(c[i]));
        return out;
    }

    std::vector<DelayBinEstimate> estimate_delay_bins(const Idsf &processed, const Envelope &env, const EvalConfig &eval,
                                                      const AntennaPattern &pattern, const std::string &spectrum_csv)
    {
        if (!processed.processed)
            throw DomainError("estimate_delay_bins: input IDSF is not processed");
        if (env.envelope.size() != processed.cols())
            throw DomainError("estimate_delay_bins: envelope does not match the IDSF");

        const BeamspaceTransform bt(processed.antenna_azimuths_deg(), processed.arc_coverage_deg,
                                    processed.carrier_frequency, processed.vuca_radius, pattern);
        const MusicEstimator music(eval.music_grid_resolution_deg);
        const auto bins = threshold_bins(env.envelope, eval.relative_threshold_db);

        std::ostringstream dump;
        const bool dumping = !spectrum_csv.empty();
        if (dumping)
            dump << "delay_ns,azimuth_deg,spectrum_db\n";

        std::vector<DelayBinEstimate> out;
        out.reserve(bins.size());
        for (std::size_t n : bins)
        {
            const auto col = processed.column(n);
            const auto mv = bt.apply(col);
            const auto est = music.estimate(mv);
            DelayBinEstimate d;
            d.delay_index = n;
            d.delay = processed.delay(n);
            d.azimuth_deg = est.azimuth_deg;
            d.power = env.envelope[n];
            d.peak_quality = est.peak_quality;
            out.push_back(d);

            if (dumping)
            {
                const auto spec = music.pseudo_spectrum_db(mv);
                const double res = 360.0 / static_cast<double>(music.grid_size());
                const std::string dns = format_number(d.delay * 1e9);
                for (std::size_t g = 0; g < spec.size(); ++g)
                    dump << dns << ',' << format_number(static_cast<double>(g) * res) << ','
                         << format_number(spec[g]) << '\n';
            }
        }
        if (dumping)
            write_text_atomic(spectrum_csv, dump.str());
        return out;
    }
}
