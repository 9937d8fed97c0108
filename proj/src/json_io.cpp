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

#include "vuca/json_io.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"

#include <cmath>

namespace vuca
{
    namespace
    {
        json level(double db) { return std::isfinite(db) ? json(db) : json(nullptr); }

        std::string sub(const std::string &at, const std::string &key) { return at.empty() ? key : at + "." + key; }

        void require_object(const json &j, const std::string &at)
        {
            if (!j.is_object())
                throw SchemaError(at, "expected an object");
        }

        const json *find(const json &j, const char *key)
        {
            auto it = j.find(key);
            return it == j.end() ? nullptr : &*it;
        }

        double get_number(const json &v, const std::string &at)
        {
            if (!v.is_number())
                throw SchemaError(at, "expected a number");
            return v.get<double>();
        }

        // number or null (null -> -inf, used for dB levels)
        double get_level(const json &v, const std::string &at)
        {
            if (v.is_null())
                return -kInf;
            return get_number(v, at);
        }

        std::size_t get_count(const json &v, const std::string &at)
        {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw SchemaError(at, "expected a non-negative integer");
            return v.get<std::size_t>();
        }

        std::string get_string(const json &v, const std::string &at)
        {
            if (!v.is_string())
                throw SchemaError(at, "expected a string");
            return v.get<std::string>();
        }

        bool get_bool(const json &v, const std::string &at)
        {
            if (!v.is_boolean())
                throw SchemaError(at, "expected true or false");
            return v.get<bool>();
        }

        template <class F>
        void field(const json &j, const std::string &at, const char *key, bool required, F &&assign)
        {
            if (const json *v = find(j, key))
                assign(*v, sub(at, key));
            else if (required)
                throw SchemaError(sub(at, key), "missing required field");
        }

        // rethrows a validate() error with the field prefixed by the object location
        template <class F>
        void validated(const std::string &at, F &&f)
        {
            try
            {
                f();
            }
            catch (const SchemaError &e)
            {
                throw SchemaError(sub(at, e.path()), std::string(e.what()).substr(e.path().size() + 2));
            }
        }
    }

    void check_schema_tag(const json &j, const std::string &at)
    {
        if (const json *v = find(j, "schema"))
        {
            const auto tag = get_string(*v, sub(at, "schema"));
            if (tag != kSchemaVersion)
                throw SchemaError(sub(at, "schema"), "unsupported schema '" + tag + "', expected '" +
                                                         std::string(kSchemaVersion) + "'");
        }
    }

    json to_json(const SounderConfig &s)
    {
        json j;
        j["name"] = s.name;
        j["carrier_frequency"] = s.carrier_frequency;
        j["bandwidth"] = s.bandwidth;
        j["rx_sampling_rate"] = s.rx_sampling_rate;
        j["sequence_length"] = s.sequence_length;
        j["num_virtual_antennas"] = s.num_virtual_antennas;
        j["sequence_duration"] = s.sequence_duration;
        j["vuca_radius"] = s.vuca_radius;
        j["tx_power"] = s.tx_power_dbm;
        j["tx_antenna_gain"] = s.tx_antenna_gain_dbi;
        j["rx_antenna_gain"] = s.rx_antenna_gain_dbi;
        j["arc_coverage"] = s.arc_coverage_deg;
        return j;
    }

    json to_json(const EvalConfig &e)
    {
        json j;
        j["delay_oversampling"] = e.delay_oversampling;
        j["freq_window_psl"] = e.freq_window_psl_db;
        j["freq_window_alpha"] = e.freq_window_alpha;
        j["spectral_filter_length"] = e.spectral_filter_length;
        j["spectral_filter_alpha"] = e.spectral_filter_alpha;
        j["relative_threshold"] = e.relative_threshold_db;
        j["delay_cluster_grid"] = e.delay_cluster_grid;
        j["angular_cluster_grid"] = e.angular_cluster_grid_deg;
        j["music_grid_resolution"] = e.music_grid_resolution_deg;
        return j;
    }

    json to_json(const Preset &p)
    {
        json j;
        j["schema"] = kSchemaVersion;
        j["sounder"] = to_json(p.sounder);
        j["eval"] = to_json(p.eval);
        return j;
    }

    json to_json(const AntennaPattern &p)
    {
        json j;
        j["kind"] = p.kind == AntennaKind::isotropic ? "isotropic" : "cosine_power";
        j["boresight_gain"] = p.boresight_gain_dbi;
        if (p.kind == AntennaKind::cosine_power)
        {
            j["exponent"] = p.exponent;
            j["front_to_back"] = std::isfinite(p.front_to_back_db) ? json(p.front_to_back_db) : json(nullptr);
        }
        return j;
    }

    json to_json(const Scene &scene)
    {
        json j;
        j["schema"] = kSchemaVersion;
        j["tx_rx_distance"] = scene.tx_rx_distance;
        j["noise_floor"] = level(scene.noise_floor_db);
        j["rotating_antenna_pattern"] = to_json(scene.rotating_antenna_pattern);
        json paths = json::array();
        for (const auto &p : scene.paths)
        {
            json jp;
            jp["delay"] = p.delay;
            jp["azimuth"] = p.azimuth_deg;
            jp["complex_gain"] = json::array({p.gain.real(), p.gain.imag()});
            paths.push_back(std::move(jp));
        }
        j["paths"] = std::move(paths);
        return j;
    }

    json to_json(const PathSet &set)
    {
        json j;
        j["schema"] = kSchemaVersion;
        j["config_name"] = set.config_name;
        j["relative_threshold"] = set.relative_threshold_db;
        j["delay_cluster_grid"] = set.delay_cluster_grid;
        j["angular_cluster_grid"] = set.angular_cluster_grid_deg;
        j["gain_compensated"] = set.gain_compensated;
        j["compensated_gain"] = set.compensated_gain_dbi;
        j["arc_coverage"] = set.arc_coverage_deg;
        j["best_effort_azimuth"] = set.arc_coverage_deg < 360.0;
        j["envelope_floor"] = level(set.envelope_floor_db);
        j["near_floor"] = set.near_floor;
        json paths = json::array();
        for (const auto &p : set.paths)
        {
            json jp;
            jp["delay"] = p.delay;
            jp["azimuth"] = p.azimuth_deg;
            jp["power"] = p.power;
            jp["power_db"] = to_db(p.power);
            paths.push_back(std::move(jp));
        }
        j["paths"] = std::move(paths);
        return j;
    }

    json to_json(const ChannelParams &c)
    {
        json j;
        j["num_paths"] = c.num_paths;
        j["total_power"] = c.total_power;
        j["path_loss"] = c.path_loss_db;
        const bool inf_k = !std::isfinite(c.k_factor);
        j["k_factor"] = inf_k ? json(nullptr) : json(to_db(c.k_factor));
        j["k_factor_std"] = inf_k ? json(nullptr) : json(to_db(c.k_factor_std));
        j["k_factor_infinite"] = inf_k;
        j["rms_delay_spread"] = c.rms_delay_spread;
        j["rms_angular_spread"] = c.rms_angular_spread_deg;
        j["mean_delay"] = c.mean_delay;
        j["mean_azimuth"] = c.mean_azimuth_deg;
        return j;
    }

    json to_json(const CiFit &fit)
    {
        json j;
        j["exponent"] = fit.exponent;
        j["reference_fspl_1m"] = fit.fspl_1m_db;
        j["residual_rms"] = fit.residual_rms_db;
        j["points"] = fit.num_points;
        return j;
    }

    SounderConfig sounder_from_json(const json &j, const std::string &at, const SounderConfig *base)
    {
        require_object(j, at);
        SounderConfig s = base ? *base : SounderConfig{};
        const bool req = base == nullptr;
        auto num = [&](const char *key, double &dst, bool required) {
            field(j, at, key, required, [&](const json &v, const std::string &p) { dst = get_number(v, p); });
        };
        auto cnt = [&](const char *key, std::size_t &dst) {
            field(j, at, key, req, [&](const json &v, const std::string &p) { dst = get_count(v, p); });
        };
        field(j, at, "name", false, [&](const json &v, const std::string &p) { s.name = get_string(v, p); });
        num("carrier_frequency", s.carrier_frequency, req);
        num("bandwidth", s.bandwidth, req);
        num("rx_sampling_rate", s.rx_sampling_rate, req);
        cnt("sequence_length", s.sequence_length);
        cnt("num_virtual_antennas", s.num_virtual_antennas);
        num("sequence_duration", s.sequence_duration, false);
        num("vuca_radius", s.vuca_radius, req);
        num("tx_power", s.tx_power_dbm, false);
        num("tx_antenna_gain", s.tx_antenna_gain_dbi, false);
        num("rx_antenna_gain", s.rx_antenna_gain_dbi, false);
        num("arc_coverage", s.arc_coverage_deg, false);
        if (req && !find(j, "sequence_duration") && s.bandwidth > 0.0)
            s.sequence_duration = static_cast<double>(s.sequence_length) / s.bandwidth;
        validated(at, [&] { s.validate(); });
        return s;
    }

    EvalConfig eval_from_json(const json &j, const EvalConfig &base, const std::string &at)
    {
        require_object(j, at);
        EvalConfig e = base;
        auto num = [&](const char *key, double &dst) {
            field(j, at, key, false, [&](const json &v, const std::string &p) { dst = get_number(v, p); });
        };
        auto cnt = [&](const char *key, std::size_t &dst) {
            field(j, at, key, false, [&](const json &v, const std::string &p) { dst = get_count(v, p); });
        };
        cnt("delay_oversampling", e.delay_oversampling);
        num("freq_window_psl", e.freq_window_psl_db);
        num("freq_window_alpha", e.freq_window_alpha);
        cnt("spectral_filter_length", e.spectral_filter_length);
        num("spectral_filter_alpha", e.spectral_filter_alpha);
        num("relative_threshold", e.relative_threshold_db);
        num("delay_cluster_grid", e.delay_cluster_grid);
        num("angular_cluster_grid", e.angular_cluster_grid_deg);
        num("music_grid_resolution", e.music_grid_resolution_deg);
        validated(at, [&] { e.validate(); });
        return e;
    }

    Preset config_from_json(const json &j, const std::string &at)
    {
        require_object(j, at);
        check_schema_tag(j, at);
        Preset p;
        const json *pn = find(j, "preset");
        const json *js = find(j, "sounder");
        if (pn)
        {
            const auto name = get_string(*pn, sub(at, "preset"));
            try
            {
                p = preset(name);
            }
            catch (const SchemaError &e)
            {
                throw SchemaError(sub(at, "preset"), "unknown preset '" + name + "'");
            }
            if (js)
            {
                p.sounder = sounder_from_json(*js, sub(at, "sounder"), &p.sounder);
                if (!find(*js, "name"))
                    p.sounder.name = name + "_custom";
            }
        }
        else
        {
            if (!js)
                throw SchemaError(sub(at, "sounder"), "missing (give either 'preset' or a full 'sounder')");
            p.sounder = sounder_from_json(*js, sub(at, "sounder"), nullptr);
            p.eval = default_eval(p.sounder);
        }
        // eval defaults follow a modified sounder
        if (pn && js)
            p.eval = default_eval(p.sounder);
        if (const json *je = find(j, "eval"))
            p.eval = eval_from_json(*je, p.eval, sub(at, "eval"));
        validated(at, [&] { p.eval.validate(p.sounder); });
        return p;
    }

    AntennaPattern pattern_from_json(const json &j, const std::string &at)
    {
        require_object(j, at);
        std::string kind = "isotropic";
        field(j, at, "kind", true, [&](const json &v, const std::string &p) { kind = get_string(v, p); });
        double gain = 0.0;
        field(j, at, "boresight_gain", false, [&](const json &v, const std::string &p) { gain = get_number(v, p); });
        AntennaPattern pat;
        if (kind == "isotropic")
            pat = AntennaPattern::isotropic(gain);
        else if (kind == "cosine_power")
        {
            double q = -1.0;
            double fb = kInf;
            field(j, at, "exponent", false, [&](const json &v, const std::string &p) {
                if (!v.is_null())
                    q = get_number(v, p);
            });
            field(j, at, "front_to_back", false, [&](const json &v, const std::string &p) {
                if (!v.is_null())
                    fb = get_number(v, p);
            });
            if (q < -0.5 && find(j, "exponent") && !find(j, "exponent")->is_null())
                throw SchemaError(sub(at, "exponent"), "must be >= 0");
            pat = AntennaPattern::cosine_power(gain, q, fb);
        }
        else
            throw SchemaError(sub(at, "kind"), "unknown antenna kind '" + kind + "'");
        validated(at, [&] { pat.validate(); });
        return pat;
    }

    Scene scene_from_json(const json &j, const std::string &at, const AntennaPattern &default_pattern)
    {
        require_object(j, at);
        check_schema_tag(j, at);
        Scene s;
        s.rotating_antenna_pattern = default_pattern;
        field(j, at, "tx_rx_distance", true,
              [&](const json &v, const std::string &p) { s.tx_rx_distance = get_number(v, p); });
        field(j, at, "noise_floor", false,
              [&](const json &v, const std::string &p) { s.noise_floor_db = get_level(v, p); });
        field(j, at, "rotating_antenna_pattern", false,
              [&](const json &v, const std::string &p) { s.rotating_antenna_pattern = pattern_from_json(v, p); });
        field(j, at, "paths", true, [&](const json &v, const std::string &p) {
            if (!v.is_array())
                throw SchemaError(p, "expected an array");
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                const std::string pp = p + "[" + std::to_string(i) + "]";
                const json &jp = v[i];
                require_object(jp, pp);
                GroundTruthPath g;
                field(jp, pp, "delay", true, [&](const json &x, const std::string &q) { g.delay = get_number(x, q); });
                field(jp, pp, "azimuth", true,
                      [&](const json &x, const std::string &q) { g.azimuth_deg = get_number(x, q); });
                const bool has_gain = find(jp, "complex_gain") != nullptr;
                const bool has_db = find(jp, "power_db") != nullptr;
                if (has_gain == has_db)
                    throw SchemaError(sub(pp, "complex_gain"), "give exactly one of complex_gain [re, im] or power_db");
                if (has_gain)
                {
                    const json &c = *find(jp, "complex_gain");
                    const std::string q = sub(pp, "complex_gain");
                    if (!c.is_array() || c.size() != 2)
                        throw SchemaError(q, "expected [re, im]");
                    g.gain = cd{get_number(c[0], q + "[0]"), get_number(c[1], q + "[1]")};
                }
                else
                {
                    const double pdb = get_number(*find(jp, "power_db"), sub(pp, "power_db"));
                    double phase = 0.0;
                    field(jp, pp, "phase", false,
                          [&](const json &x, const std::string &q) { phase = get_number(x, q); });
                    g.gain = std::polar(std::sqrt(from_db(pdb)), phase * kPi / 180.0);
                }
                s.paths.push_back(g);
            }
        });
        validated(at, [&] { s.validate(); });
        return s;
    }

    PathSet pathset_from_json(const json &j, const std::string &at)
    {
        require_object(j, at);
        check_schema_tag(j, at);
        PathSet s;
        field(j, at, "config_name", false, [&](const json &v, const std::string &p) { s.config_name = get_string(v, p); });
        field(j, at, "relative_threshold", false,
              [&](const json &v, const std::string &p) { s.relative_threshold_db = get_number(v, p); });
        field(j, at, "delay_cluster_grid", false,
              [&](const json &v, const std::string &p) { s.delay_cluster_grid = get_number(v, p); });
        field(j, at, "angular_cluster_grid", false,
              [&](const json &v, const std::string &p) { s.angular_cluster_grid_deg = get_number(v, p); });
        field(j, at, "gain_compensated", false,
              [&](const json &v, const std::string &p) { s.gain_compensated = get_bool(v, p); });
        field(j, at, "compensated_gain", false,
              [&](const json &v, const std::string &p) { s.compensated_gain_dbi = get_number(v, p); });
        field(j, at, "arc_coverage", false,
              [&](const json &v, const std::string &p) { s.arc_coverage_deg = get_number(v, p); });
        field(j, at, "envelope_floor", false,
              [&](const json &v, const std::string &p) { s.envelope_floor_db = get_level(v, p); });
        field(j, at, "near_floor", false, [&](const json &v, const std::string &p) { s.near_floor = get_bool(v, p); });
        field(j, at, "paths", true, [&](const json &v, const std::string &p) {
            if (!v.is_array())
                throw SchemaError(p, "expected an array");
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                const std::string pp = p + "[" + std::to_string(i) + "]";
                require_object(v[i], pp);
                EstimatedPath e;
                field(v[i], pp, "delay", true, [&](const json &x, const std::string &q) { e.delay = get_number(x, q); });
                field(v[i], pp, "azimuth", true,
                      [&](const json &x, const std::string &q) { e.azimuth_deg = get_number(x, q); });
                field(v[i], pp, "power", true, [&](const json &x, const std::string &q) {
                    e.power = get_number(x, q);
                    if (!(e.power > 0.0))
                        throw SchemaError(q, "must be > 0");
                });
                s.paths.push_back(e);
            }
        });
        return s;
    }

    json parse_json_text(const std::string &text, const std::string &origin)
    {
        try
        {
            return json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw SchemaError(origin, std::string("invalid JSON: ") + e.what());
        }
    }

    json load_json_file(const std::string &path)
    {
        return parse_json_text(read_text(path), path);
    }

    void write_json_file(const std::string &path, const json &j)
    {
        write_text_atomic(path, j.dump(2) + "\n");
    }
}
