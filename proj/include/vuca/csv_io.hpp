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

#ifndef VUCA_CSV_IO_HPP
#define VUCA_CSV_IO_HPP

#include <string>

namespace vuca
{
    // Writes to path + ".tmp" and renames over the target, so readers never see a partial file.
    // Throws FormatError on I/O failure.
    void write_text_atomic(const std::string &path, const std::string &content);

    std::string read_text(const std::string &path); // throws FormatError

    // Shortest decimal that reads back to the same double; identical input gives
    // identical text on every run
    std::string format_number(double value);

    // Fixed number of significant digits, for human-facing tables
    std::string format_number(double value, int significant);
}

#endif
