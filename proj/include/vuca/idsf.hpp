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

#ifndef VUCA_IDSF_HPP
#define VUCA_IDSF_HPP

#include "vuca/model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vuca
{
    // Input delay spread function: one row per virtual antenna, one column per delay sample.
    //
    // Raw captures hold the received samples of each sounding period (N_delay = M, step 1/fS);
    // processed captures hold calibrated CIRs (N_delay = oversampling * M, step 1/(oversampling*fS)).
    class Idsf
    {
    public:
        Idsf() = default;
        Idsf(std::size_t rows, std::size_t cols);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }

        std::span<cd> row(std::size_t k) { return {data_.data() + k * cols_, cols_}; }
        std::span<const cd> row(std::size_t k) const { return {data_.data() + k * cols_, cols_}; }

        cd &operator()(std::size_t k, std::size_t n) { return data_[k * cols_ + n]; }
        const cd &operator()(std::size_t k, std::size_t n) const { return data_[k * cols_ + n]; }

        std::vector<cd> &data() { return data_; }
        const std::vector<cd> &data() const { return data_; }

        // Copy of column n (one value per virtual antenna)
        std::vector<cd> column(std::size_t n) const;

        // psi_k = arc * k / K, in degrees
        double antenna_azimuth_deg(std::size_t k) const;
        std::vector<double> antenna_azimuths_deg() const;

        double delay(std::size_t n) const { return delay_start + static_cast<double>(n) * delay_step; }

        double delay_start = 0.0;       // [s]
        double delay_step = 0.0;        // [s]
        double carrier_frequency = 0.0; // [Hz]
        double vuca_radius = 0.0;       // [m]
        double arc_coverage_deg = 360.0;
        bool processed = false;
        std::string config_name;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cd> data_;
    };

    // "VIDS" binary container, little-endian:
    //   char[4] magic "VIDS", u32 version, u32 K, u32 N_delay, f64 delay_start, f64 delay_step,
    //   f64 f0, f64 R_A, f64 arc_deg, u32 flags (bit 0: processed),
    // followed by K * N_delay row-major interleaved complex float32 (re, im) pairs.
    inline constexpr std::uint32_t kVidsVersion = 1;
    inline constexpr std::uint32_t kVidsFlagProcessed = 1u;

    void write_vids(const std::string &path, const Idsf &idsf);
    Idsf read_vids(const std::string &path); // throws FormatError on bad magic/version/size
}

#endif
