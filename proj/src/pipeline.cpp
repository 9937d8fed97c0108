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

#include "vuca/pipeline.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"
#include "vuca/fft.hpp"
#include "vuca/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <tuple>

namespace vuca
{
    Correlator make_correlator(const SounderConfig &sounder, const EvalConfig &eval,
                               std::optional<std::vector<cd>> calibration)
    {
        sounder.validate();
        eval.validate();
        const auto seq = fzc_generate(sounder.sequence_length, 1);
        auto window = design_ultraspherical(sounder.in_band_bins(), eval.freq_window_psl_db, eval.freq_window_alpha);
        return Correlator(seq, sounder.rx_sampling_rate, sounder.bandwidth, std::move(window), eval.delay_oversampling,
                          std::move(calibration));
    }

    Idsf process_capture(const Idsf &raw, const SounderConfig &sounder, const EvalConfig &eval,
                         std::optional<std::vector<cd>> calibration)
    {
        if (raw.processed)
            throw DomainError("process_capture: double processing, the input is already processed");
        sounder.validate();
        eval.validate(sounder);
        if (raw.rows() != sounder.num_virtual_antennas || raw.cols() != sounder.sequence_length)
            throw DomainError("process_capture: capture is " + std::to_string(raw.rows()) + " x " +
                              std::to_string(raw.cols()) + ", configuration '" + sounder.name + "' expects " +
                              std::to_string(sounder.num_virtual_antennas) + " x " +
                              std::to_string(sounder.sequence_length));
        if (raw.carrier_frequency != 0.0 && std::abs(raw.carrier_frequency - sounder.carrier_frequency) >
                                                1e-9 * sounder.carrier_frequency)
            throw DomainError("process_capture: capture carrier frequency does not match the configuration");

        const auto corr = make_correlator(sounder, eval, std::move(calibration));

        Idsf out(raw.rows(), corr.output_length());
        out.delay_start = 0.0;
        out.delay_step = corr.delay_step();
        out.carrier_frequency = sounder.carrier_frequency;
        out.vuca_radius = sounder.vuca_radius;
        out.arc_coverage_deg = sounder.arc_coverage_deg;
        out.config_name = sounder.name;

        parallel_for(raw.rows(), [&](std::size_t k) { corr.correlate_into(raw.row(k), out.row(k)); });

        spectral_lowpass(out, eval.spectral_filter_length, eval.spectral_filter_alpha);
        out.processed = true;
        return out;
    }

    std::vector<double> spatial_taper(std::size_t rows, std::size_t length, double alpha)
    {
        if (rows == 0 || length == 0 || length > rows)
            throw DomainError("spatial_taper: need 1 <= L_D <= K (L_D = " + std::to_string(length) +
                              ", K = " + std::to_string(rows) + ")");
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw DomainError("spatial_taper: alpha must be in [0, 1]");

        // integral of a Tukey taper squared is (1 - 5 alpha / 8) of its support
        const double support = static_cast<double>(length) / (1.0 - 0.625 * alpha);
        const double half = support / 2.0;

        std::vector<double> t(rows);
        for (std::size_t i = 0; i < rows; ++i)
        {
            const double m = i <= rows / 2 ? static_cast<double>(i) : static_cast<double>(rows - i);
            const double u = m / half;
            double g;
            if (u <= 1.0 - alpha)
                g = 1.0;
            else if (u < 1.0)
                g = 0.5 * (1.0 + std::cos(kPi * (u - (1.0 - alpha)) / alpha));
            else
                g = 0.0;
            t[i] = g;
        }
        return t;
    }

    void spectral_lowpass_column(std::span<cd> column, std::span<const double> taper)
    {
        if (column.size() != taper.size())
            throw DomainError("spectral_lowpass_column: taper length mismatch");
        fft::forward(column);
        const double inv = 1.0 / static_cast<double>(column.size());
        for (std::size_t i = 0; i < column.size(); ++i)
            column[i] *= taper[i] * inv;
        fft::backward(column);
    }

    void spectral_lowpass(Idsf &idsf, std::size_t length, double alpha)
    {
        const std::size_t K = idsf.rows();
        const std::size_t N = idsf.cols();
        const auto taper = spatial_taper(K, length, alpha);
        if (std::all_of(taper.begin(), taper.end(), [](double v) { return v == 1.0; }))
            return;

        constexpr std::size_t block = 64;
        const std::size_t nblocks = (N + block - 1) / block;
        parallel_for(nblocks, [&](std::size_t b) {
            const std::size_t n0 = b * block;
            const std::size_t n1 = std::min(N, n0 + block);
            std::vector<cd> col(K);
            for (std::size_t n = n0; n < n1; ++n)
            {
                for (std::size_t k = 0; k < K; ++k)
                    col[k] = idsf(k, n);
                spectral_lowpass_column(col, taper);
                for (std::size_t k = 0; k < K; ++k)
                    idsf(k, n) = col[k];
            }
        });
    }

    Envelope envelope_and_pdp(const Idsf &idsf)
    {
        const std::size_t K = idsf.rows();
        const std::size_t N = idsf.cols();
        if (K == 0 || N == 0)
            throw DomainError("envelope_and_pdp: empty IDSF");
        Envelope e;
        e.envelope.assign(N, -1.0);
        e.pdp_min.assign(N, kInf);
        e.pointing.assign(N, 0);
        e.delay_start = idsf.delay_start;
        e.delay_step = idsf.delay_step;
        for (std::size_t k = 0; k < K; ++k)
        {
            const auto row = idsf.row(k);
            for (std::size_t n = 0; n < N; ++n)
            {
                const double p = std::norm(row[n]);
                if (p > e.envelope[n])
                {
                    e.envelope[n] = p;
                    e.pointing[n] = k;
                }
                e.pdp_min[n] = std::min(e.pdp_min[n], p);
            }
        }
        return e;
    }

    double envelope_floor_db(const Envelope &env)
    {
        if (env.envelope.empty())
            throw DomainError("envelope_floor_db: empty envelope");
        std::vector<double> v = env.envelope;
        auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
        std::nth_element(v.begin(), mid, v.end());
        return to_db(*mid);
    }

    double spatial_envelope_factor(std::size_t rows, std::size_t length, double alpha)
    {
        static std::mutex mtx;
        static std::map<std::tuple<std::size_t, std::size_t, double>, double> cache;
        const auto key = std::make_tuple(rows, length, alpha);
        {
            std::lock_guard<std::mutex> lock(mtx);
            if (auto it = cache.find(key); it != cache.end())
                return it->second;
        }

        const auto taper = spatial_taper(rows, length, alpha);
        constexpr std::size_t trials = 2049;
        std::mt19937_64 rng(0x5EED5EEDull);
        std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
        std::vector<double> peaks(trials);
        std::vector<cd> col(rows);
        for (std::size_t t = 0; t < trials; ++t)
        {
            for (auto &v : col)
            {
                const double re = nd(rng);
                const double im = nd(rng);
                v = cd{re, im};
            }
            spectral_lowpass_column(col, taper);
            double mx = 0.0;
            for (const auto &v : col)
                mx = std::max(mx, std::norm(v));
            peaks[t] = mx;
        }
        auto mid = peaks.begin() + trials / 2;
        std::nth_element(peaks.begin(), mid, peaks.end());
        const double factor = *mid;

        std::lock_guard<std::mutex> lock(mtx);
        cache.emplace(key, factor);
        return factor;
    }

    double noise_floor_per_unit_variance(const SounderConfig &sounder, const EvalConfig &eval)
    {
        const auto corr = make_correlator(sounder, eval);
        return corr.noise_gain() *
               spatial_envelope_factor(sounder.num_virtual_antennas, eval.spectral_filter_length,
                                       eval.spectral_filter_alpha);
    }

    void write_envelope_csv(const std::string &path, const Envelope &env, const Idsf &idsf)
    {
        std::ostringstream out;
        out << "delay_ns,envelope_db,min_db,pointing_deg\n";
        for (std::size_t n = 0; n < env.envelope.size(); ++n)
        {
            out << format_number((env.delay_start + static_cast<double>(n) * env.delay_step) * 1e9) << ','
                << format_number(to_db(env.envelope[n])) << ',' << format_number(to_db(env.pdp_min[n])) << ','
                << format_number(idsf.antenna_azimuth_deg(env.pointing[n])) << '\n';
        }
        write_text_atomic(path, out.str());
    }
}
