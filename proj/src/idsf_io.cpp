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

#include "vuca/idsf.hpp"
#include "vuca/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace vuca
{
    Idsf::Idsf(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    std::vector<cd> Idsf::column(std::size_t n) const
    {
        std::vector<cd> c(rows_);
        for (std::size_t k = 0; k < rows_; ++k)
            c[k] = data_[k * cols_ + n];
        return c;
    }

    double Idsf::antenna_azimuth_deg(std::size_t k) const
    {
        return arc_coverage_deg * static_cast<double>(k) / static_cast<double>(rows_);
    }

    std::vector<double> Idsf::antenna_azimuths_deg() const
    {
        std::vector<double> a(rows_);
        for (std::size_t k = 0; k < rows_; ++k)
            a[k] = antenna_azimuth_deg(k);
        return a;
    }

    namespace
    {
        template <typename T>
        void put(std::string &buf, T value)
        {
            static_assert(std::is_trivially_copyable_v<T>);
            char bytes[sizeof(T)];
            std::memcpy(bytes, &value, sizeof(T));
            if constexpr (std::endian::native == std::endian::big)
                std::reverse(bytes, bytes + sizeof(T));
            buf.append(bytes, sizeof(T));
        }

        template <typename T>
        T get(const char *&p)
        {
            char bytes[sizeof(T)];
            std::memcpy(bytes, p, sizeof(T));
            if constexpr (std::endian::native == std::endian::big)
                std::reverse(bytes, bytes + sizeof(T));
            p += sizeof(T);
            T value;
            std::memcpy(&value, bytes, sizeof(T));
            return value;
        }

        constexpr std::size_t kHeaderSize = 4 + 3 * 4 + 5 * 8 + 4;
    }

    void write_vids(const std::string &path, const Idsf &idsf)
    {
        std::string buf;
        buf.reserve(kHeaderSize + idsf.data().size() * 8);
        buf.append("VIDS", 4);
        put<std::uint32_t>(buf, kVidsVersion);
        put<std::uint32_t>(buf, static_cast<std::uint32_t>(idsf.rows()));
        put<std::uint32_t>(buf, static_cast<std::uint32_t>(idsf.cols()));
        put<double>(buf, idsf.delay_start);
        put<double>(buf, idsf.delay_step);
        put<double>(buf, idsf.carrier_frequency);
        put<double>(buf, idsf.vuca_radius);
        put<double>(buf, idsf.arc_coverage_deg);
        put<std::uint32_t>(buf, idsf.processed ? kVidsFlagProcessed : 0u);
        for (const cd &v : idsf.data())
        {
            put<float>(buf, static_cast<float>(v.real()));
            put<float>(buf, static_cast<float>(v.imag()));
        }

        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw FormatError("cannot open '" + tmp + "' for writing");
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            if (!out)
                throw FormatError("write to '" + tmp + "' failed");
        }
        std::filesystem::rename(tmp, path);
    }

    Idsf read_vids(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw FormatError("cannot open '" + path + "'");
        std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (buf.size() < kHeaderSize)
            throw FormatError(path + ": truncated header");
        if (buf.compare(0, 4, "VIDS") != 0)
            throw FormatError(path + ": bad magic, not a VIDS file");

        const char *p = buf.data() + 4;
        const auto version = get<std::uint32_t>(p);
        if (version != kVidsVersion)
            throw FormatError(path + ": unsupported VIDS version " + std::to_string(version));
        const auto rows = get<std::uint32_t>(p);
        const auto cols = get<std::uint32_t>(p);
        const double delay_start = get<double>(p);
        const double delay_step = get<double>(p);
        const double f0 = get<double>(p);
        const double radius = get<double>(p);
        const double arc = get<double>(p);
        const auto flags = get<std::uint32_t>(p);

        const std::size_t expected = kHeaderSize + static_cast<std::size_t>(rows) * cols * 8;
        if (buf.size() != expected)
            throw FormatError(path + ": payload size " + std::to_string(buf.size() - kHeaderSize) +
                              " does not match K x N_delay = " + std::to_string(rows) + " x " + std::to_string(cols));

        Idsf idsf(rows, cols);
        idsf.delay_start = delay_start;
        idsf.delay_step = delay_step;
        idsf.carrier_frequency = f0;
        idsf.vuca_radius = radius;
        idsf.arc_coverage_deg = arc;
        idsf.processed = (flags & kVidsFlagProcessed) != 0;
        for (cd &v : idsf.data())
        {
            const float re = get<float>(p);
            const float im = get<float>(p);
            if (!std::isfinite(re) || !std::isfinite(im))
                throw FormatError(path + ": non-finite sample");
            v = cd(re, im);
        }
        return idsf;
    }
}
