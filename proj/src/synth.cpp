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

#include "vuca/synth.hpp"
#include "vuca/error.hpp"
#include "vuca/fft.hpp"
#include "vuca/parallel.hpp"
#include "vuca/pipeline.hpp"
#include "vuca/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vuca
{
    SynthMode parse_synth_mode(std::string_view name)
    {
        if (name == "ideal")
            return SynthMode::ideal;
        if (name == "full_waveform")
            return SynthMode::full_waveform;
        throw SchemaError("mode", "unknown synthesis mode '" + std::string(name) + "'");
    }

    const char *to_string(SynthMode mode)
    {
        return mode == SynthMode::ideal ? "ideal" : "full_waveform";
    }

    std::uint64_t row_seed(std::uint64_t seed, std::uint64_t k)
    {
        // splitmix64 finalizer over a Weyl step
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (k + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    namespace
    {
        // exp(-j 2 pi f tau) on the DFT grid of one period, signed bin frequencies
        std::vector<cd> delay_spectrum(std::size_t M, double fs, double tau)
        {
            std::vector<cd> d(M);
            const double df = fs / static_cast<double>(M);
            for (std::size_t b = 0; b < M; ++b)
            {
                const double sb = b <= M / 2 ? static_cast<double>(b) : static_cast<double>(b) - static_cast<double>(M);
                d[b] = std::polar(1.0, -2.0 * kPi * sb * df * tau);
            }
            return d;
        }
    }

    Idsf synthesize_idsf(const Scene &scene, const SounderConfig &sounder, const EvalConfig &eval,
                         const SynthOptions &options)
    {
        sounder.validate();
        eval.validate(sounder);
        scene.validate();

        const std::size_t M = sounder.sequence_length;
        const std::size_t K = sounder.num_virtual_antennas;
        const double fs = sounder.rx_sampling_rate;
        const double period = static_cast<double>(M) / fs;
        for (std::size_t i = 0; i < scene.paths.size(); ++i)
            if (scene.paths[i].delay >= period)
                throw DomainError("synthesize_idsf: path " + std::to_string(i) + " delay exceeds one period (" +
                                  std::to_string(period * 1e9) + " ns), it would alias");

        const double beta = 2.0 * kPi * sounder.vuca_radius / sounder.wavelength();
        const double arc = sounder.arc_coverage_deg;
        const auto &pattern = scene.rotating_antenna_pattern;

        std::vector<cd> S = fzc_generate(M, 1).samples;
        fft::forward(S);

        Idsf out(K, M);
        out.delay_start = 0.0;
        out.delay_step = 1.0 / fs;
        out.carrier_frequency = sounder.carrier_frequency;
        out.vuca_radius = sounder.vuca_radius;
        out.arc_coverage_deg = arc;
        out.processed = false;
        out.config_name = sounder.name;

        const std::size_t P = scene.paths.size();
        const double invM = 1.0 / static_cast<double>(M);

        // Per-path amplitude at antenna k, geometric phase excluded
        auto amplitude = [&](std::size_t l, double psi_deg) {
            const auto &p = scene.paths[l];
            return p.gain * std::sqrt(pattern.power_gain(p.azimuth_deg - psi_deg));
        };

        if (options.mode == SynthMode::ideal)
        {
            // S(f) D_l(f) for every path, the row spectrum is a weighted sum of these
            std::vector<std::vector<cd>> SD(P);
            for (std::size_t l = 0; l < P; ++l)
            {
                SD[l] = delay_spectrum(M, fs, scene.paths[l].delay);
                for (std::size_t b = 0; b < M; ++b)
                    SD[l][b] *= S[b];
            }
            parallel_for(K, [&](std::size_t k) {
                const double psi = out.antenna_azimuth_deg(k);
                std::vector<cd> row(M, cd{0.0, 0.0});
                for (std::size_t l = 0; l < P; ++l)
                {
                    const double phi = scene.paths[l].azimuth_deg;
                    const cd a = amplitude(l, psi) * std::polar(1.0, beta * std::cos((phi - psi) * kPi / 180.0));
                    const auto &sd = SD[l];
                    for (std::size_t b = 0; b < M; ++b)
                        row[b] += a * sd[b];
                }
                fft::backward(row);
                auto dst = out.row(k);
                for (std::size_t n = 0; n < M; ++n)
                    dst[n] = row[n] * invM;
            });
        }
        else
        {
            // Delayed copies of the transmitted period, one per path
            std::vector<std::vector<cd>> x(P);
            for (std::size_t l = 0; l < P; ++l)
            {
                x[l] = delay_spectrum(M, fs, scene.paths[l].delay);
                for (std::size_t b = 0; b < M; ++b)
                    x[l][b] *= S[b] * invM;
                fft::backward(x[l]);
            }
            const double step_deg = arc / static_cast<double>(K);
            parallel_for(K, [&](std::size_t k) {
                const double psi = out.antenna_azimuth_deg(k);
                auto dst = out.row(k);
                std::fill(dst.begin(), dst.end(), cd{0.0, 0.0});
                for (std::size_t l = 0; l < P; ++l)
                {
                    const double phi = scene.paths[l].azimuth_deg;
                    const cd a = amplitude(l, psi);
                    const auto &xl = x[l];
                    for (std::size_t n = 0; n < M; ++n)
                    {
                        double psi_n = psi;
                        if (!options.frozen_rotation)
                            psi_n += step_deg * (static_cast<double>(n) * invM - 0.5);
                        dst[n] += a * xl[n] * std::polar(1.0, beta * std::cos((phi - psi_n) * kPi / 180.0));
                    }
                }
            });
        }

        if (std::isfinite(scene.noise_floor_db))
            inject_noise(out, scene.noise_floor_db, options.noise_seed, sounder, eval);
        return out;
    }

    void inject_noise(Idsf &raw, double target_floor_db, std::uint64_t seed, double floor_per_unit_variance)
    {
        if (std::isinf(target_floor_db) && target_floor_db < 0.0)
            return;
        if (!std::isfinite(target_floor_db))
            throw DomainError("inject_noise: noise floor must be finite or -inf");
        if (!(floor_per_unit_variance > 0.0))
            throw DomainError("inject_noise: calibration factor must be positive");
        if (raw.processed)
            throw DomainError("inject_noise: noise is added to raw captures only");

        const double variance = from_db(target_floor_db) / floor_per_unit_variance;
        const double sigma = std::sqrt(variance / 2.0);
        parallel_for(raw.rows(), [&](std::size_t k) {
            std::mt19937_64 rng(row_seed(seed, k));
            std::normal_distribution<double> nd(0.0, sigma);
            for (auto &v : raw.row(k))
            {
                const double re = nd(rng);
                const double im = nd(rng);
                v += cd{re, im};
            }
        });
    }

    void inject_noise(Idsf &raw, double target_floor_db, std::uint64_t seed, const SounderConfig &sounder,
                      const EvalConfig &eval)
    {
        if (std::isinf(target_floor_db) && target_floor_db < 0.0)
            return;
        inject_noise(raw, target_floor_db, seed, noise_floor_per_unit_variance(sounder, eval));
    }
}
