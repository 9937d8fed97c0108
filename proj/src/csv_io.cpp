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

#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vuca
{
    void write_text_atomic(const std::string &path, const std::string &content)
    {
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw FormatError("cannot open '" + tmp + "' for writing");
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!out)
                throw FormatError("write to '" + tmp + "' failed");
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
            throw FormatError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
    }

    std::string read_text(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw FormatError("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), value);
        return std::string(buf, res.ptr);
    }

    std::string format_number(double value, int significant)
    {
        if (!std::isfinite(value))
            return format_number(value);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
        return buf;
    }
}
