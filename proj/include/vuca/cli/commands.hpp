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

#ifndef VUCA_CLI_COMMANDS_HPP
#define VUCA_CLI_COMMANDS_HPP

#include "vuca/cli/scenario.hpp"
#include "vuca/cluster.hpp"
#include "vuca/idsf.hpp"
#include "vuca/params.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vuca::cli
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_data = 2,
        exit_numeric = 3
    };

    // Envelope -> threshold -> per-bin MUSIC -> clustering -> boresight gain compensation
    PathSet estimate_paths(const Idsf &processed, const EvalConfig &eval, const AntennaPattern &pattern,
                           const std::string &spectrum_csv = {});

    struct ReportInput
    {
        std::string label;
        double distance_m = 0.0;
        PathSet paths;
    };

    struct ReportResult
    {
        std::vector<ParamsRow> rows;
        std::optional<CiFit> fit; // empty below 2 usable positions
        std::vector<std::string> skipped; // labels with an empty path set
    };

    // Writes params.csv, params.json, ci_fit.json, pdp.csv, delay_azimuth.csv, rose.csv and
    // params_vs_distance.csv into out_dir
    ReportResult write_report(std::span<const ReportInput> inputs, const SounderConfig &sounder,
                              const std::string &out_dir);

    struct E2eOptions
    {
        bool debug_spectrum = false;
        bool keep_idsf = false;
    };

    // synth -> process -> estimate per test point, then the report; a failing stage aborts the run
    // with an error naming the test point and stage
    ReportResult run_e2e(const Scenario &scenario, const std::string &out_dir, const E2eOptions &options = {});

    // Command-line entry point; returns the process exit code
    int run(int argc, char **argv, std::ostream &out, std::ostream &err);
}

#endif
