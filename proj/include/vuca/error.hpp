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

#ifndef VUCA_ERROR_HPP
#define VUCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vuca
{
    // Input outside the mathematical domain of an operation (non-positive frequency, K < K_min, ...)
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Malformed configuration, scene or file content. 'path' locates the offending field.
    class SchemaError : public std::runtime_error
    {
    public:
        SchemaError(std::string path, const std::string &what);
        const std::string &path() const noexcept { return path_; }

    private:
        std::string path_;
    };

    // Binary / CSV file problems (bad magic, truncated data, unwritable output)
    class FormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A numerical procedure did not produce a usable result
    class NumericError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
