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

#ifndef VUCA_JSON_IO_HPP
#define VUCA_JSON_IO_HPP

#include "vuca/cluster.hpp"
#include "vuca/model.hpp"
#include "vuca/params.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace vuca
{
    using json = nlohmann::ordered_json;

    // Documents carry "schema": "vuca-1". Field names follow the domain types, SI units throughout
    // (Hz, s, m), angles in degrees, levels in dB. Non-finite levels are written as null.
    // Parse errors throw SchemaError whose path() is a JSON pointer-like location ("scene.paths[2].delay").

    json to_json(const SounderConfig &s);
    json to_json(const EvalConfig &e);
    json to_json(const AntennaPattern &p);
    json to_json(const Scene &scene);
    json to_json(const PathSet &set);
    json to_json(const ChannelParams &c);
    json to_json(const CiFit &fit);

    // With 'base' every field is optional and overrides the base value; without it the required
    // fields must be present.
    SounderConfig sounder_from_json(const json &j, const std::string &at = "sounder",
                                    const SounderConfig *base = nullptr);
    EvalConfig eval_from_json(const json &j, const EvalConfig &base, const std::string &at = "eval");
    AntennaPattern pattern_from_json(const json &j, const std::string &at = "rotating_antenna_pattern");
    // 'default_pattern' applies when the scene names no rotating antenna pattern
    Scene scene_from_json(const json &j, const std::string &at = "scene",
                          const AntennaPattern &default_pattern = AntennaPattern::isotropic());
    PathSet pathset_from_json(const json &j, const std::string &at = "pathset");

    // Configuration document:
    //   { "schema": "vuca-1", "preset": "desk_fr3", "sounder": {...}, "eval": {...} }
    // "preset" is optional; when given, "sounder" and "eval" only override its fields. Eval fields
    // left out default to the values matched to the resulting sounder.
    Preset config_from_json(const json &j, const std::string &at = "config");
    json to_json(const Preset &p);

    // Throws SchemaError for syntax errors (path "<file>") and FormatError for unreadable files
    json parse_json_text(const std::string &text, const std::string &origin);
    json load_json_file(const std::string &path);

    // Pretty-printed, trailing newline, atomic write
    void write_json_file(const std::string &path, const json &j);

    void check_schema_tag(const json &j, const std::string &at);
}

#endif
