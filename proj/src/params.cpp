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

#include "vuca/params.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vuca
{
    double total_power(std::span<const EstimatedPath> paths)
    {
        double s = 0.0;
        for (const auto &p : paths)
            s += p.power;
        return s;
    }

    double path_loss_db(std::span<const EstimatedPath> paths)
    {
        const double p = total_power(paths);
        if (!(p > 0.0))
            throw DomainError("path_loss_db: total power must be > 0");
        return -to_db(p);
    }

    namespace
    {
        // power of the first-arriving path and the sum of all other powers
        std::pair<double, double> split_first(std::span<const EstimatedPath> paths)
        {
            if (paths.empty())
                throw DomainError("k_factor: empty path set");
            std::size_t best = 0;
            for (std::size_t i = 1; i < paths.size(); ++i)
                if (paths[i].delay < paths[best].delay ||
                    (paths[i].delay == paths[best].delay && paths[i].power > paths[best].power))
                    best = i;
            double rest = 0.0;
            for (std::size_t i = 0; i < paths.size(); ++i)
                if (i != best)
                    rest += paths[i].power;
            return {paths[best].power, rest};
        }
    }

    double k_factor(std::span<const EstimatedPath> paths)
    {
        const auto [p1, rest] = split_first(paths);
        if (rest <= 0.0)
            return kInf;
        return (p1 + rest) / rest;
    }

    double k_factor_std(std::span<const EstimatedPath> paths)
    {
        const auto [p1, rest] = split_first(paths);
        if (rest <= 0.0)
            return kInf;
        return p1 / rest;
    }

    double rms_delay_spread(std::span<const EstimatedPath> paths)
    {
        const double P = total_power(paths);
        if (!(P > 0.0))
            throw DomainError("rms_delay_spread: total power must be > 0");
        if (paths.size() == 1)
            return 0.0;
        // two passes: central moment without the cancellation of E[t^2] - E[t]^2
        double mean = 0.0;
        for (const auto &p : paths)
            mean += p.power * p.delay;
        mean /= P;
        double m2 = 0.0;
        for (const auto &p : paths)
            m2 += p.power * (p.delay - mean) * (p.delay - mean);
        return std::sqrt(m2 / P);
    }

    namespace
    {
        cd resultant(std::span<const EstimatedPath> paths)
        {
            cd r{0.0, 0.0};
            for (const auto &p : paths)
                r += p.power * std::polar(1.0, p.azimuth_deg * kPi / 180.0);
            return r;
        }
    }

    double rms_angular_spread_deg(std::span<const EstimatedPath> paths)
    {
        const double P = total_power(paths);
        if (!(P > 0.0))
            throw DomainError("rms_angular_spread_deg: total power must be > 0");
        if (paths.size() == 1)
            return 0.0;
        // 1 - R from the offsets to the mean direction, free of cancellation for tight clusters
        const double mean = std::arg(resultant(paths));
        double spread = 0.0;
        for (const auto &p : paths)
        {
            const double s = std::sin(0.5 * (p.azimuth_deg * kPi / 180.0 - mean));
            spread += p.power * s * s;
        }
        const double one_minus_r = std::clamp(2.0 * spread / P, 0.0, 1.0 - 1e-15);
        return std::sqrt(-2.0 * std::log1p(-one_minus_r)) * 180.0 / kPi;
    }

    ChannelParams compute_params(const PathSet &set)
    {
        const auto &paths = set.paths;
        if (paths.empty())
            throw DomainError("compute_params: no paths");
        ChannelParams c;
        c.num_paths = paths.size();
        c.total_power = total_power(paths);
        if (!(c.total_power > 0.0) || !std::isfinite(c.total_power))
            throw DomainError("compute_params: total power must be finite and > 0");
        c.path_loss_db = -to_db(c.total_power);
        c.k_factor = k_factor(paths);
        c.k_factor_std = k_factor_std(paths);
        c.rms_delay_spread = rms_delay_spread(paths);
        c.rms_angular_spread_deg = rms_angular_spread_deg(paths);
        double m1 = 0.0;
        for (const auto &p : paths)
            m1 += p.power * p.delay;
        c.mean_delay = m1 / c.total_power;
        const cd r = resultant(paths);
        c.mean_azimuth_deg = std::abs(r) > 0.0 ? wrap_degrees(std::arg(r) * 180.0 / kPi) : 0.0;
        return c;
    }

    CiFit ci_fit(std::span<const double> distances_m, std::span<const double> path_loss_db, double carrier_frequency,
                 double tx_antenna_gain_dbi, double rx_antenna_gain_dbi)
    {
        if (distances_m.size() != path_loss_db.size())
            throw DomainError("ci_fit: distance and path-loss counts differ");
        if (distances_m.size() < 2)
            throw DomainError("ci_fit: at least 2 points are required");
        if (!(carrier_frequency > 0.0))
            throw DomainError("ci_fit: carrier frequency must be > 0");

        CiFit fit;
        fit.num_points = distances_m.size();
        const double lambda = kSpeedOfLight / carrier_frequency;
        fit.fspl_1m_db = 20.0 * std::log10(4.0 * kPi / lambda);

        double sxy = 0.0, sxx = 0.0;
        std::vector<double> x(distances_m.size()), y(distances_m.size());
        for (std::size_t i = 0; i < distances_m.size(); ++i)
        {
            const double d = distances_m[i];
            if (!(d >= 1.0) || !std::isfinite(d))
                throw DomainError("ci_fit: distance " + std::to_string(d) + " m is below the 1 m reference");
            if (!std::isfinite(path_loss_db[i]))
                throw DomainError("ci_fit: path loss must be finite");
            x[i] = 10.0 * std::log10(d);
            y[i] = path_loss_db[i] - tx_antenna_gain_dbi - rx_antenna_gain_dbi - fit.fspl_1m_db;
            sxy += x[i] * y[i];
            sxx += x[i] * x[i];
        }
        if (!(sxx > 0.0))
            throw DomainError("ci_fit: all distances are 1 m, the exponent is undetermined");
        fit.exponent = sxy / sxx;

        double ss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double r = y[i] - fit.exponent * x[i];
            ss += r * r;
        }
        fit.residual_rms_db = std::sqrt(ss / static_cast<double>(x.size()));
        return fit;
    }

    ParamsSummary summarize(std::span<const ChannelParams> points)
    {
        if (points.empty())
            throw DomainError("summarize: no points");
        ParamsSummary s;
        s.num_points = points.size();
        s.min = points.front();
        s.max = points.front();
        s.min.k_factor = s.min.k_factor_std = kInf;
        s.max.k_factor = s.max.k_factor_std = -kInf;
        for (const auto &p : points)
        {
            auto mm = [](double &lo, double &hi, double v) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            };
            mm(s.min.total_power, s.max.total_power, p.total_power);
            mm(s.min.path_loss_db, s.max.path_loss_db, p.path_loss_db);
            mm(s.min.rms_delay_spread, s.max.rms_delay_spread, p.rms_delay_spread);
            mm(s.min.rms_angular_spread_deg, s.max.rms_angular_spread_deg, p.rms_angular_spread_deg);
            mm(s.min.mean_delay, s.max.mean_delay, p.mean_delay);
            mm(s.min.mean_azimuth_deg, s.max.mean_azimuth_deg, p.mean_azimuth_deg);
            s.min.num_paths = std::min(s.min.num_paths, p.num_paths);
            s.max.num_paths = std::max(s.max.num_paths, p.num_paths);
            if (std::isfinite(p.k_factor))
            {
                ++s.finite_k_points;
                mm(s.min.k_factor, s.max.k_factor, p.k_factor);
                mm(s.min.k_factor_std, s.max.k_factor_std, p.k_factor_std);
            }
        }
        // every position single-path: K is unbounded everywhere
        if (s.finite_k_points == 0)
            s.min.k_factor = s.max.k_factor = s.min.k_factor_std = s.max.k_factor_std = kInf;
        return s;
    }

    void write_params_csv(const std::string &path, std::span<const ParamsRow> rows)
    {
        std::ostringstream out;
        out << "label,distance_m,num_paths,path_loss_db,k_factor_db,k_factor_std_db,rms_delay_spread_ns,"
               "rms_angular_spread_deg\n";
        auto line = [&](const std::string &label, double d, const ChannelParams &p) {
            out << label << ',' << format_number(d) << ',' << p.num_paths << ',' << format_number(p.path_loss_db)
                << ',' << format_number(to_db(p.k_factor)) << ',' << format_number(to_db(p.k_factor_std)) << ','
                << format_number(p.rms_delay_spread * 1e9) << ',' << format_number(p.rms_angular_spread_deg) << '\n';
        };
        std::vector<ChannelParams> all;
        double dmin = kInf, dmax = -kInf;
        for (const auto &r : rows)
        {
            line(r.label, r.distance_m, r.params);
            all.push_back(r.params);
            dmin = std::min(dmin, r.distance_m);
            dmax = std::max(dmax, r.distance_m);
        }
        if (!all.empty())
        {
            const auto s = summarize(all);
            line("min", dmin, s.min);
            line("max", dmax, s.max);
        }
        write_text_atomic(path, out.str());
    }
}
