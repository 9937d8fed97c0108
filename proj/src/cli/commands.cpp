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

#include "vuca/cli/commands.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/doa.hpp"
#include "vuca/error.hpp"
#include "vuca/json_io.hpp"
#include "vuca/pipeline.hpp"
#include "vuca/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

namespace fs = std::filesystem;

namespace vuca::cli
{
    PathSet estimate_paths(const Idsf &processed, const EvalConfig &eval, const AntennaPattern &pattern,
                           const std::string &spectrum_csv)
    {
        const auto env = envelope_and_pdp(processed);
        const auto bins = estimate_delay_bins(processed, env, eval, pattern, spectrum_csv);
        auto set = cluster_paths(bins, eval.delay_cluster_grid, eval.angular_cluster_grid_deg);
        set.config_name = processed.config_name;
        set.relative_threshold_db = eval.relative_threshold_db;
        set.arc_coverage_deg = processed.arc_coverage_deg;
        set.envelope_floor_db = envelope_floor_db(env);
        const double peak = *std::max_element(env.envelope.begin(), env.envelope.end());
        set.near_floor = !(peak > 0.0) || to_db(peak) - set.envelope_floor_db < eval.relative_threshold_db;
        return compensate_antenna_gain(set, pattern);
    }

    namespace
    {
        std::string db(double linear) { return format_number(to_db(linear)); }

        json params_json(const ReportResult &r)
        {
            json j;
            j["schema"] = kSchemaVersion;
            json pts = json::array();
            std::vector<ChannelParams> all;
            for (const auto &row : r.rows)
            {
                json p;
                p["label"] = row.label;
                p["distance"] = row.distance_m;
                const json jp = to_json(row.params);
                for (const auto &[k, v] : jp.items())
                    p[k] = v;
                pts.push_back(std::move(p));
                all.push_back(row.params);
            }
            j["points"] = std::move(pts);
            if (!all.empty())
            {
                const auto s = summarize(all);
                j["min"] = to_json(s.min);
                j["max"] = to_json(s.max);
            }
            json sk = json::array();
            for (const auto &l : r.skipped)
                sk.push_back(l);
            j["skipped"] = std::move(sk);
            return j;
        }
    }

    ReportResult write_report(std::span<const ReportInput> inputs, const SounderConfig &sounder,
                              const std::string &out_dir)
    {
        fs::create_directories(out_dir);
        auto path = [&](const char *name) { return (fs::path(out_dir) / name).string(); };

        ReportResult r;
        std::ostringstream pdp, da, rose;
        pdp << "label,delay_ns,power_db\n";
        da << "label,delay_ns,azimuth_deg,power_db\n";
        rose << "label,azimuth_deg,power_db\n";
        for (const auto &in : inputs)
        {
            auto paths = in.paths.paths;
            std::sort(paths.begin(), paths.end(), [](const EstimatedPath &a, const EstimatedPath &b) {
                return a.delay != b.delay ? a.delay < b.delay : a.azimuth_deg < b.azimuth_deg;
            });
            for (const auto &p : paths)
            {
                pdp << in.label << ',' << format_number(p.delay * 1e9) << ',' << db(p.power) << '\n';
                da << in.label << ',' << format_number(p.delay * 1e9) << ',' << format_number(p.azimuth_deg) << ','
                   << db(p.power) << '\n';
            }
            std::stable_sort(paths.begin(), paths.end(), [](const EstimatedPath &a, const EstimatedPath &b) {
                return a.azimuth_deg < b.azimuth_deg;
            });
            for (const auto &p : paths)
                rose << in.label << ',' << format_number(p.azimuth_deg) << ',' << db(p.power) << '\n';

            if (in.paths.paths.empty())
            {
                r.skipped.push_back(in.label);
                continue;
            }
            r.rows.push_back({in.label, in.distance_m, compute_params(in.paths)});
        }

        std::vector<double> d, pl;
        for (const auto &row : r.rows)
        {
            d.push_back(row.distance_m);
            pl.push_back(row.params.path_loss_db);
        }
        json fit_json;
        fit_json["schema"] = kSchemaVersion;
        if (r.rows.size() >= 2)
        {
            r.fit = ci_fit(d, pl, sounder.carrier_frequency, sounder.tx_antenna_gain_dbi, sounder.rx_antenna_gain_dbi);
            fit_json["status"] = "ok";
            const json fj = to_json(*r.fit);
            for (const auto &[k, v] : fj.items())
                fit_json[k] = v;
        }
        else
        {
            fit_json["status"] = "insufficient points";
            fit_json["points"] = r.rows.size();
        }
        fit_json["carrier_frequency"] = sounder.carrier_frequency;
        fit_json["tx_antenna_gain"] = sounder.tx_antenna_gain_dbi;
        fit_json["rx_antenna_gain"] = sounder.rx_antenna_gain_dbi;

        std::ostringstream pvd;
        pvd << "label,distance_m,path_loss_db,propagation_loss_db,fspl_db,ci_model_db,k_factor_db,"
               "rms_delay_spread_ns,rms_angular_spread_deg,num_paths\n";
        const double lambda = sounder.wavelength();
        for (const auto &row : r.rows)
        {
            const auto &p = row.params;
            const double prop = p.path_loss_db - sounder.tx_antenna_gain_dbi - sounder.rx_antenna_gain_dbi;
            const double fspl = 20.0 * std::log10(4.0 * kPi * row.distance_m / lambda);
            pvd << row.label << ',' << format_number(row.distance_m) << ',' << format_number(p.path_loss_db) << ','
                << format_number(prop) << ',' << format_number(fspl) << ',';
            if (r.fit && row.distance_m >= 1.0)
                pvd << format_number(r.fit->fspl_1m_db + 10.0 * r.fit->exponent * std::log10(row.distance_m));
            else
                pvd << "nan";
            pvd << ',' << db(p.k_factor) << ',' << format_number(p.rms_delay_spread * 1e9) << ','
                << format_number(p.rms_angular_spread_deg) << ',' << p.num_paths << '\n';
        }

        write_params_csv(path("params.csv"), r.rows);
        write_json_file(path("params.json"), params_json(r));
        write_json_file(path("ci_fit.json"), fit_json);
        write_text_atomic(path("pdp.csv"), pdp.str());
        write_text_atomic(path("delay_azimuth.csv"), da.str());
        write_text_atomic(path("rose.csv"), rose.str());
        write_text_atomic(path("params_vs_distance.csv"), pvd.str());
        return r;
    }

    namespace
    {
        // Runs f, prefixing any library error with 'context' while keeping its category
        template <class F>
        auto staged(const std::string &context, F &&f) -> decltype(f())
        {
            try
            {
                return f();
            }
            catch (const SchemaError &e)
            {
                throw SchemaError(e.path(), context + ": " + std::string(e.what()).substr(
                                                                 e.path().empty() ? 0 : e.path().size() + 2));
            }
            catch (const DomainError &e)
            {
                throw DomainError(context + ": " + e.what());
            }
            catch (const FormatError &e)
            {
                throw FormatError(context + ": " + e.what());
            }
            catch (const NumericError &e)
            {
                throw NumericError(context + ": " + e.what());
            }
        }

        void write_paths_files(const std::string &prefix, const PathSet &set)
        {
            write_paths_csv(prefix + ".csv", set);
            write_json_file(prefix + ".json", to_json(set));
        }
    }

    ReportResult run_e2e(const Scenario &scenario, const std::string &out_dir, const E2eOptions &options)
    {
        const auto &cfg = scenario.config;
        fs::create_directories(out_dir);
        write_json_file((fs::path(out_dir) / "config.json").string(), to_json(cfg));

        std::vector<ReportInput> inputs;
        for (std::size_t i = 0; i < scenario.points.size(); ++i)
        {
            const auto &tp = scenario.points[i];
            const auto dir = (fs::path(out_dir) / tp.label).string();
            fs::create_directories(dir);

            SynthOptions so;
            so.mode = scenario.mode;
            so.noise_seed = row_seed(scenario.seed, 0x7E57 + i);
            const auto raw = staged(tp.label + "/synth", [&] { return synthesize_idsf(tp.scene, cfg.sounder, cfg.eval, so); });
            if (options.keep_idsf)
                write_vids((fs::path(dir) / "raw.vids").string(), raw);

            const auto proc = staged(tp.label + "/process", [&] { return process_capture(raw, cfg.sounder, cfg.eval); });
            if (options.keep_idsf)
                write_vids((fs::path(dir) / "processed.vids").string(), proc);

            auto set = staged(tp.label + "/estimate", [&] {
                const auto env = envelope_and_pdp(proc);
                write_envelope_csv((fs::path(dir) / "envelope.csv").string(), env, proc);
                return estimate_paths(proc, cfg.eval, tp.scene.rotating_antenna_pattern,
                                      options.debug_spectrum ? (fs::path(dir) / "spectrum.csv").string() : "");
            });
            write_paths_files((fs::path(dir) / "paths").string(), set);
            inputs.push_back({tp.label, tp.scene.tx_rx_distance, std::move(set)});
        }
        return staged("report", [&] { return write_report(inputs, cfg.sounder, (fs::path(out_dir) / "report").string()); });
    }

    namespace
    {
        struct ConfigFlags
        {
            std::string preset = "desk_fr3";
            std::string config;
        };

        void add_config_flags(CLI::App *cmd, ConfigFlags &f)
        {
            auto *p = cmd->add_option("--preset", f.preset, "Named configuration (fr3_14ghz, subthz_160ghz, desk_fr3, desk_subthz)");
            auto *c = cmd->add_option("--config", f.config, "Configuration JSON (overrides --preset)");
            p->excludes(c);
        }

        Preset resolve_config(const ConfigFlags &f)
        {
            if (!f.config.empty())
                return config_from_json(load_json_file(f.config), f.config);
            return preset(f.preset);
        }

        std::string strip_suffix(std::string s)
        {
            for (const char *ext : {".json", ".csv"})
            {
                const std::string e = ext;
                if (s.size() > e.size() && s.compare(s.size() - e.size(), e.size(), e) == 0)
                    return s.substr(0, s.size() - e.size());
            }
            return s;
        }

        std::string envelope_path_for(const std::string &vids)
        {
            fs::path p(vids);
            p.replace_extension();
            return p.string() + ".envelope.csv";
        }

        PathSet load_paths(const std::string &file)
        {
            return pathset_from_json(load_json_file(file), file);
        }
    }

    int run(int argc, char **argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Virtual uniform circular array channel sounding: synthesis, processing and estimation"};
        app.require_subcommand(1);
        app.set_version_flag("--version", std::string("vuca ") + kSchemaVersion);

        ConfigFlags cf_synth, cf_process, cf_estimate, cf_report, cf_e2e;
        std::uint64_t seed = 0;
        std::string mode_name = "ideal";
        std::string scene_file, in_file, out_path, pattern_file, pattern_scene, scenario_file;
        std::string envelope_csv;
        std::vector<std::string> paths_files;
        std::vector<double> distances;
        bool debug_spectrum = false, keep_idsf = false;

        auto *synth = app.add_subcommand("synth", "Synthesize a raw capture (VIDS) from a scene");
        synth->add_option("--scene", scene_file, "Scene JSON")->required();
        add_config_flags(synth, cf_synth);
        synth->add_option("--mode", mode_name, "ideal | full_waveform");
        synth->add_option("--seed", seed, "Noise seed");
        synth->add_option("--out", out_path, "Output VIDS file")->required();

        auto *process = app.add_subcommand("process", "Correlate, window and low-pass a raw capture");
        process->add_option("--in", in_file, "Raw VIDS file")->required();
        add_config_flags(process, cf_process);
        process->add_option("--out", out_path, "Processed VIDS file")->required();
        process->add_option("--envelope", envelope_csv, "Envelope CSV (default <out>.envelope.csv)");

        auto *estimate = app.add_subcommand("estimate", "Estimate the discrete path set of a processed capture");
        estimate->add_option("--in", in_file, "Processed VIDS file")->required();
        add_config_flags(estimate, cf_estimate);
        auto *pf = estimate->add_option("--pattern", pattern_file, "Rotating antenna pattern JSON");
        auto *ps = estimate->add_option("--scene", pattern_scene, "Take the rotating antenna pattern from a scene JSON");
        pf->excludes(ps);
        estimate->add_option("--out", out_path, "Output prefix, writes <prefix>.csv and <prefix>.json")->required();
        estimate->add_flag("--debug-spectrum", debug_spectrum, "Dump every pseudo-spectrum to <prefix>.spectrum.csv");

        auto *report = app.add_subcommand("report", "Channel parameters, CI fit and plot data for a set of positions");
        report->add_option("--paths", paths_files, "PathSet JSON files")->required();
        report->add_option("--distance", distances, "Tx-Rx distance per file [m]")->required();
        add_config_flags(report, cf_report);
        report->add_option("--out", out_path, "Output directory")->required();

        auto *e2e = app.add_subcommand("e2e", "Run synth, process, estimate and report for a scenario");
        e2e->add_option("--scenario", scenario_file, "Scenario JSON")->required();
        auto *e2e_preset = e2e->add_option("--preset", cf_e2e.preset, "Replace the scenario configuration by a preset");
        auto *e2e_config = e2e->add_option("--config", cf_e2e.config, "Replace the scenario configuration");
        e2e_preset->excludes(e2e_config);
        e2e->add_option("--seed", seed, "Override the scenario seed");
        e2e->add_option("--out", out_path, "Output directory")->required();
        e2e->add_flag("--debug-spectrum", debug_spectrum, "Dump pseudo-spectra per position");
        e2e->add_flag("--keep-idsf", keep_idsf, "Also write raw and processed VIDS files");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }

        try
        {
            if (*synth)
            {
                const auto cfg = resolve_config(cf_synth);
                const auto scene = scene_from_json(load_json_file(scene_file), scene_file, default_rx_pattern(cfg.sounder));
                SynthOptions so;
                so.mode = parse_synth_mode(mode_name);
                so.noise_seed = seed;
                const auto raw = synthesize_idsf(scene, cfg.sounder, cfg.eval, so);
                write_vids(out_path, raw);
                out << "synth: K=" << raw.rows() << " N_delay=" << raw.cols() << " paths=" << scene.paths.size()
                    << " mode=" << to_string(so.mode) << " noise_seed=" << seed
                    << (std::isfinite(scene.noise_floor_db) ? "" : " noise=off") << '\n';
            }
            else if (*process)
            {
                const auto cfg = resolve_config(cf_process);
                const auto raw = read_vids(in_file);
                const auto proc = process_capture(raw, cfg.sounder, cfg.eval);
                write_vids(out_path, proc);
                const auto env = envelope_and_pdp(proc);
                const auto env_path = envelope_csv.empty() ? envelope_path_for(out_path) : envelope_csv;
                write_envelope_csv(env_path, env, proc);
                out << "process: K=" << proc.rows() << " N_delay=" << proc.cols()
                    << " envelope_floor_db=" << format_number(envelope_floor_db(env), 6) << " envelope=" << env_path
                    << '\n';
            }
            else if (*estimate)
            {
                const auto cfg = resolve_config(cf_estimate);
                AntennaPattern pattern = default_rx_pattern(cfg.sounder);
                if (!pattern_file.empty())
                    pattern = pattern_from_json(load_json_file(pattern_file), pattern_file);
                else if (!pattern_scene.empty())
                    pattern = scene_from_json(load_json_file(pattern_scene), pattern_scene, pattern).rotating_antenna_pattern;
                const auto proc = read_vids(in_file);
                const auto prefix = strip_suffix(out_path);
                const auto set = estimate_paths(proc, cfg.eval, pattern, debug_spectrum ? prefix + ".spectrum.csv" : "");
                write_paths_files(prefix, set);
                out << "estimate: paths=" << set.paths.size() << " envelope_floor_db="
                    << format_number(set.envelope_floor_db, 6) << " out=" << prefix << ".{csv,json}\n";
                if (set.paths.empty())
                    err << "vuca: warning: no delay bin above the threshold, path set is empty\n";
                if (set.near_floor)
                    err << "vuca: warning: strongest bin is within " << cfg.eval.relative_threshold_db
                        << " dB of the envelope floor, paths may be noise\n";
                if (set.arc_coverage_deg < 360.0)
                    err << "vuca: warning: partial arc of " << set.arc_coverage_deg
                        << " deg, azimuths are best effort\n";
            }
            else if (*report)
            {
                if (paths_files.size() != distances.size())
                    throw SchemaError("distance", "got " + std::to_string(distances.size()) + " distances for " +
                                                      std::to_string(paths_files.size()) + " path files");
                const auto cfg = resolve_config(cf_report);
                std::vector<ReportInput> inputs;
                for (std::size_t i = 0; i < paths_files.size(); ++i)
                {
                    auto label = fs::path(paths_files[i]).stem().string();
                    if (label == "paths")
                        label = fs::path(paths_files[i]).parent_path().filename().string();
                    if (label.empty() || std::any_of(inputs.begin(), inputs.end(),
                                                     [&](const ReportInput &r) { return r.label == label; }))
                        label = "TP" + std::to_string(i + 1);
                    inputs.push_back({label, distances[i], load_paths(paths_files[i])});
                }
                const auto r = write_report(inputs, cfg.sounder, out_path);
                out << "report: positions=" << r.rows.size();
                if (r.fit)
                    out << " ci_exponent=" << format_number(r.fit->exponent, 6);
                else
                    out << " ci_fit=insufficient points";
                out << " out=" << out_path << '\n';
                for (const auto &s : r.skipped)
                    err << "vuca: warning: " << s << " has no paths, left out of the parameter table\n";
            }
            else if (*e2e)
            {
                auto scenario = load_scenario(scenario_file);
                if (e2e->count("--config") > 0)
                    scenario.config = config_from_json(load_json_file(cf_e2e.config), cf_e2e.config);
                else if (e2e->count("--preset") > 0)
                    scenario.config = preset(cf_e2e.preset);
                if (e2e->count("--seed") > 0)
                    scenario.seed = seed;
                E2eOptions opt;
                opt.debug_spectrum = debug_spectrum;
                opt.keep_idsf = keep_idsf;
                const auto r = run_e2e(scenario, out_path, opt);
                out << "e2e: positions=" << scenario.points.size() << " seed=" << scenario.seed;
                if (r.fit)
                    out << " ci_exponent=" << format_number(r.fit->exponent, 6);
                out << " out=" << out_path << '\n';
            }
            return exit_ok;
        }
        catch (const SchemaError &e)
        {
            err << "vuca: error: kind=schema field=" << (e.path().empty() ? "-" : e.path()) << " msg=" << e.what() << '\n';
            return exit_data;
        }
        catch (const FormatError &e)
        {
            err << "vuca: error: kind=format msg=" << e.what() << '\n';
            return exit_data;
        }
        catch (const DomainError &e)
        {
            err << "vuca: error: kind=domain msg=" << e.what() << '\n';
            return exit_data;
        }
        catch (const fs::filesystem_error &e)
        {
            err << "vuca: error: kind=io msg=" << e.what() << '\n';
            return exit_data;
        }
        catch (const NumericError &e)
        {
            err << "vuca: error: kind=numeric msg=" << e.what() << '\n';
            return exit_numeric;
        }
        catch (const std::exception &e)
        {
            err << "vuca: error: kind=internal msg=" << e.what() << '\n';
            return exit_numeric;
        }
    }
}
