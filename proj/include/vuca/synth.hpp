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

#ifndef VUCA_SYNTH_HPP
#define VUCA_SYNTH_HPP

#include "vuca/idsf.hpp"
#include "vuca/model.hpp"

#include <cstdint>
#include <string_view>

namespace vuca
{
    enum class SynthMode
    {
        ideal,        // each antenna position sees a static channel for a whole sounding period
        full_waveform // antenna azimuth advances continuously during every period
    };

    SynthMode parse_synth_mode(std::string_view name); // "ideal" | "full_waveform"
    const char *to_string(SynthMode mode);

    struct SynthOptions
    {
        SynthMode mode = SynthMode::ideal;
        std::uint64_t noise_seed = 0;
        bool frozen_rotation = false; // full_waveform only: keep the antenna at psi_k for the whole period
    };

    // Synthesizes the raw capture of a VUCA measurement: K rows of M received samples, one FZC
    // period per virtual antenna. Antenna k sits at psi_k = arc * k / K with boresight radially
    // outward. Per-antenna channel at baseband frequency f:
    //
    //   H_k(f) = sum_l g_l sqrt(G(phi_l - psi_k)) exp(-j 2 pi f tau_l) exp(+j beta cos(phi_l - psi_k))
    //
    // with beta = 2 pi R_A / lambda0 (far field, horizontal plane; the carrier phase is part of g_l).
    // full_waveform evaluates the geometric phase per sample with psi advancing linearly by arc/K
    // per period, centred on psi_k; the pattern is taken at psi_k.
    //
    // Noise at the scene's floor (processed scale) is added unless the floor is -inf.
    // Throws DomainError when a delay does not fit in one period (circular aliasing).
    Idsf synthesize_idsf(const Scene &scene, const SounderConfig &sounder, const EvalConfig &eval,
                         const SynthOptions &options = {});

    // Adds circular white Gaussian noise of variance target / floor_per_unit_variance to every raw
    // sample, so that the median envelope of the processed capture lands at target_floor_db.
    // Row k draws from a generator seeded by (seed, k). target = -inf leaves the data untouched.
    void inject_noise(Idsf &raw, double target_floor_db, std::uint64_t seed, double floor_per_unit_variance);
    void inject_noise(Idsf &raw, double target_floor_db, std::uint64_t seed, const SounderConfig &sounder,
                      const EvalConfig &eval);

    // Deterministic 64-bit seed for row k of a run seeded with 'seed'
    std::uint64_t row_seed(std::uint64_t seed, std::uint64_t k);
}

#endif
