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

#ifndef VUCA_PIPELINE_HPP
#define VUCA_PIPELINE_HPP

#include "vuca/idsf.hpp"
#include "vuca/model.hpp"
#include "vuca/waveform.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vuca
{
    // Correlator for a configuration: FZC root 1, ultraspherical window over the in-band bins
    Correlator make_correlator(const SounderConfig &sounder, const EvalConfig &eval,
                               std::optional<std::vector<cd>> calibration = std::nullopt);

    // Raw capture -> processed IDSF: back-to-back calibration, correlation, frequency window and delay
    // oversampling, then spectral_lowpass across rows. A flat (or absent) calibration is the identity.
    Idsf process_capture(const Idsf &raw, const SounderConfig &sounder, const EvalConfig &eval,
                         std::optional<std::vector<cd>> calibration = std::nullopt);

    // Gain of the spatial ("Doppler") low-pass for each DFT bin of a K-point transform across the
    // rows, in FFT order. The passband is a Tukey taper centred on mode 0 whose support is stretched
    // to L_D / (1 - 5 alpha / 8), so that its noise-equivalent width is L_D modes and the noise power
    // drops by K / L_D. alpha = 0 keeps |m| <= L_D / 2 unweighted.
    std::vector<double> spatial_taper(std::size_t rows, std::size_t length, double alpha);

    // Low-pass every delay column across the virtual antennas (in place). Throws DomainError for L_D > K.
    void spectral_lowpass(Idsf &idsf, std::size_t length, double alpha);
    void spectral_lowpass_column(std::span<cd> column, std::span<const double> taper);

    struct Envelope
    {
        std::vector<double> envelope;       // max_k |h_k(n)|^2
        std::vector<double> pdp_min;        // min_k |h_k(n)|^2
        std::vector<std::size_t> pointing;  // argmax_k
        double delay_start = 0.0;
        double delay_step = 0.0;
    };

    Envelope envelope_and_pdp(const Idsf &idsf);

    // Median of the envelope in dB, the realized noise floor of a (mostly) noise-only capture
    double envelope_floor_db(const Envelope &env);

    // Median of max_k |lowpassed unit-variance white noise|^2 over a column of K rows
    double spatial_envelope_factor(std::size_t rows, std::size_t length, double alpha);

    // Processed envelope floor per unit raw noise variance for a configuration
    double noise_floor_per_unit_variance(const SounderConfig &sounder, const EvalConfig &eval);

    // delay_ns, envelope_db, min_db, pointing_deg
    void write_envelope_csv(const std::string &path, const Envelope &env, const Idsf &idsf);
}

#endif
