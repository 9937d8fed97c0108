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

#include "vuca/cli/scenario.hpp"
#include "vuca/error.hpp"

#include <filesystem>
#include <set>

namespace vuca::cli
{
    AntennaPattern default_rx_pattern(const SounderConfig &sounder)
    {
        return AntennaPattern::cosine_power(sounder.rx_antenna_gain_dbi);
    }

    Scenario scenario_from_json(const json &j, const std::string &base_dir)
    {
        if (!j.is_object())
            throw SchemaError("scenario", "expected an object");
        check_schema_tag(j, "scenario");

        Scenario sc;
        if (auto it = j.find("name"); it != j.end())
        {
            if (!it->is_string())
                throw SchemaError("scenario.name", "expected a string");
            sc.name = it->get<std::string>();
        }

        auto cfg = j.find("config");
        if (cfg == j.end())
            throw SchemaError("scenario.config", "missing required field");
        sc.config = config_from_json(*cfg, "scenario.config");

        if (auto it = j.find("mode"); it != j.end())
        {
            if (!it->is_string())
                throw SchemaError("scenario.mode", "expected a string");
            try
            {
                sc.mode = parse_synth_mode(it->get<std::string>());
            }
            catch (const SchemaError &e)
            {
                throw SchemaError("scenario.mode", e.what());
            }
        }
        if (auto it = j.find("seed"); it != j.end())
        {
            if (!it->is_number_unsigned())
                throw SchemaError("scenario.seed", "expected a non-negative integer");
            sc.seed = it->get<std::uint64_t>();
        }

        auto tps = j.find("test_points");
        if (tps == j.end() || !tps->is_array() || tps->empty())
            throw SchemaError("scenario.test_points", "expected a non-empty array");

        const auto pattern = default_rx_pattern(sc.config.sounder);
        std::set<std::string> labels;
        for (std::size_t i = 0; i < tps->size(); ++i)
        {
            const std::string at = "scenario.test_points[" + std::to_string(i) + "]";
            const json &tp = (*tps)[i];
            if (!tp.is_object())
                throw SchemaError(at, "expected an object");
            TestPoint p;
            p.label = "TP" + std::to_string(i + 1);
            if (auto it = tp.find("label"); it != tp.end())
            {
                if (!it->is_string() || it->get<std::string>().empty())
                    throw SchemaError(at + ".label", "expected a non-empty string");
                p.label = it->get<std::string>();
            }
            if (p.label.find_first_of("/\\,\"") != std::string::npos)
                throw SchemaError(at + ".label", "must not contain path separators, commas or quotes");
            if (!labels.insert(p.label).second)
                throw SchemaError(at + ".label", "duplicate label '" + p.label + "'");

            const bool inline_scene = tp.contains("scene");
            const bool file_scene = tp.contains("scene_file");
            if (inline_scene == file_scene)
                throw SchemaError(at, "give exactly one of 'scene' or 'scene_file'");
            if (inline_scene)
                p.scene = scene_from_json(tp["scene"], at + ".scene", pattern);
            else
            {
                if (!tp["scene_file"].is_string())
                    throw SchemaError(at + ".scene_file", "expected a string");
                const auto file = (std::filesystem::path(base_dir) / tp["scene_file"].get<std::string>()).string();
                p.scene = scene_from_json(load_json_file(file), file, pattern);
            }
            sc.points.push_back(std::move(p));
        }
        return sc;
    }

    Scenario load_scenario(const std::string &path)
    {
        const auto dir = std::filesystem::path(path).parent_path().string();
        return scenario_from_json(load_json_file(path), dir.empty() ? "." : dir);
    }
}
