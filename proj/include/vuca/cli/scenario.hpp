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

#ifndef VUCA_CLI_SCENARIO_HPP
#define VUCA_CLI_SCENARIO_HPP

#include "vuca/json_io.hpp"
#include "vuca/model.hpp"
#include "vuca/synth.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vuca::cli
{
    struct TestPoint
    {
        std::string label;
        Scene scene; // distance is scene.tx_rx_distance
    };

    // Scenario document:
    //   { "schema": "vuca-1", "name": "...", "config": { <configuration document> },
    //     "mode": "ideal" | "full_waveform", "seed": 7,
    //     "test_points": [ { "label": "TP1", "scene": { <scene> } | "scene_file": "tp1.json" }, ... ] }
    // scene_file paths are relative to the scenario file. Scenes without a rotating antenna pattern get
    // a cosine-power pattern with the configuration's Rx antenna gain.
    struct Scenario
    {
        std::string name;
        Preset config;
        SynthMode mode = SynthMode::ideal;
        std::uint64_t seed = 0;
        std::vector<TestPoint> points;
    };

    AntennaPattern default_rx_pattern(const SounderConfig &sounder);

    Scenario scenario_from_json(const json &j, const std::string &base_dir);
    Scenario load_scenario(const std::string &path);
}

#endif
