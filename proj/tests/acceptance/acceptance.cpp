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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit status when any fails.

#include "vuca/cli/commands.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/fft.hpp"
#include "vuca/params.hpp"
#include "vuca/pipeline.hpp"
#include "vuca/synth.hpp"
#include "vuca/waveform.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace vuca;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, double a)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, a);
        return buf;
    }

    // ---- 1 ---------------------------------------------------------------

    Outcome kmin_values()
    {
        const auto a = k_min(14e9, 0.144);
        const auto b = k_min(160e9, 0.085);
        return {a == 85 && b == 571, "k_min(14 GHz, 0.144 m)=" + std::to_string(a) +
                                          " k_min(160 GHz, 0.085 m)=" + std::to_string(b)};
    }

    // ---- 2 ---------------------------------------------------------------

    Outcome spectral_filter_gain()
    {
        std::ostringstream d;
        bool pass = true;
        for (auto [K, L] : {std::pair<std::size_t, std::size_t>{1000, 85}, {1440, 571}})
        {
            const double expect = 10.0 * std::log10(static_cast<double>(K) / static_cast<double>(L));
            double lo = 1e9, hi = -1e9;
            for (std::uint64_t seed = 1; seed <= 10; ++seed)
            {
                Idsf x(K, 256);
                std::mt19937_64 rng(seed);
                std::normal_distribution<double> nd(0.0, 1.0);
                for (auto &v : x.data())
                    v = cd{nd(rng), nd(rng)};
                double before = 0.0, after = 0.0;
                for (const auto &v : x.data())
                    before += std::norm(v);
                spectral_lowpass(x, L, 0.5);
                for (const auto &v : x.data())
                    after += std::norm(v);
                const double g = 10.0 * std::log10(before / after);
                lo = std::min(lo, g);
                hi = std::max(hi, g);
                pass = pass && std::abs(g - expect) <= 0.5;
            }
            d << "(K=" << K << ", L_D=" << L << ") expect " << fmt("%.2f", expect) << " dB, measured "
              << fmt("%.2f", lo) << ".." << fmt("%.2f", hi) << " dB; ";
        }
        return {pass, d.str()};
    }

    // ---- 3 ---------------------------------------------------------------

    Outcome doppler_delay_shift()
    {
        const double B = 2e9;
        const double bound = 1.0 / (2.0 * B);
        std::ostringstream d;
        bool pass = true;
        double worst_all = 0.0;
        for (auto [f0, R] : {std::pair{14e9, 0.144}, {160e9, 0.085}, {28e9, 0.10}, {60e9, 0.05}})
        {
            SounderConfig s;
            s.name = "doppler";
            s.carrier_frequency = f0;
            s.bandwidth = B;
            s.rx_sampling_rate = 2.5e9;
            s.sequence_length = 256;
            s.num_virtual_antennas = k_min(f0, R);
            s.sequence_duration = 256.0 / B;
            s.vuca_radius = R;
            const auto eval = default_eval(s);

            Scene scene;
            scene.tx_rx_distance = 1.0;
            scene.paths = {{23.37e-9, 37.0, cd{1e-3, 0.0}}};

            SynthOptions moving;
            moving.mode = SynthMode::full_waveform;
            SynthOptions frozen = moving;
            frozen.frozen_rotation = true;
            const auto a = synthesize_idsf(scene, s, eval, moving);
            const auto b = synthesize_idsf(scene, s, eval, frozen);

            const auto corr = make_correlator(s, eval);
            const double period = static_cast<double>(corr.output_length());
            double worst = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k)
            {
                const double pa = peak_position(corr.correlate(a.row(k)));
                const double pb = peak_position(corr.correlate(b.row(k)));
                double diff = std::fmod(pa - pb + 1.5 * period, period) - 0.5 * period;
                worst = std::max(worst, std::abs(diff) * corr.delay_step());
            }
            worst_all = std::max(worst_all, worst);
            pass = pass && worst <= bound;
            d << "(" << f0 / 1e9 << " GHz, " << R << " m, K=" << s.num_virtual_antennas << ") "
              << fmt("%.3f", worst * 1e9) << " ns; ";
        }
        d << "bound " << bound * 1e9 << " ns";
        return {pass, d.str()};
    }

    // ---- 4 ---------------------------------------------------------------

    Outcome end_to_end_recovery()
    {
        const auto p = preset("desk_fr3");
        const double Ts = 1.0 / p.sounder.bandwidth;
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        const int scenes = 20;
        int exact = 0;
        bool within = true;
        double worst_az = 0.0, worst_delay = 0.0, worst_power = 0.0;
        for (int s = 0; s < scenes; ++s)
        {
            Scene sc;
            sc.rotating_antenna_pattern = AntennaPattern::cosine_power(p.sounder.rx_antenna_gain_dbi);
            sc.tx_rx_distance = 3.0 + 37.0 * U(rng);
            const double los = sc.tx_rx_distance / kSpeedOfLight;
            const int L = 1 + static_cast<int>(U(rng) * 10.0);
            while (static_cast<int>(sc.paths.size()) < L)
            {
                GroundTruthPath g;
                g.delay = sc.paths.empty() ? los : los + 400e-9 * U(rng);
                g.azimuth_deg = 360.0 * U(rng);
                const bool clear = std::all_of(sc.paths.begin(), sc.paths.end(), [&](const GroundTruthPath &q) {
                    return std::abs(q.delay - g.delay) >= 2.0 * Ts &&
                           circular_distance_deg(q.azimuth_deg, g.azimuth_deg) >= 10.0;
                });
                if (!clear)
                    continue;
                const double pdb = -60.0 - 20.0 * U(rng);
                g.gain = std::polar(std::sqrt(from_db(pdb)), 2.0 * kPi * U(rng));
                sc.paths.push_back(g);
            }
            double strongest = 0.0;
            for (const auto &q : sc.paths)
                strongest = std::max(strongest, std::norm(q.gain));
            sc.sort_paths();
            // SNR of the strongest path at the envelope maximum (boresight gain included): 40..50 dB
            sc.noise_floor_db = to_db(strongest) + p.sounder.rx_antenna_gain_dbi - 40.0 - 10.0 * U(rng);

            SynthOptions so;
            so.noise_seed = static_cast<std::uint64_t>(s);
            const auto raw = synthesize_idsf(sc, p.sounder, p.eval, so);
            const auto proc = process_capture(raw, p.sounder, p.eval);
            const auto set = cli::estimate_paths(proc, p.eval, sc.rotating_antenna_pattern);
            if (set.paths.size() != sc.paths.size())
                continue;
            ++exact;

            // one-to-one assignment, closest pairs first
            std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
            for (std::size_t i = 0; i < sc.paths.size(); ++i)
                for (std::size_t j = 0; j < set.paths.size(); ++j)
                    cand.emplace_back(std::abs(set.paths[j].delay - sc.paths[i].delay) / Ts +
                                          circular_distance_deg(set.paths[j].azimuth_deg, sc.paths[i].azimuth_deg) / 10.0,
                                      i, j);
            std::sort(cand.begin(), cand.end());
            std::vector<bool> ti(sc.paths.size()), ej(set.paths.size());
            for (const auto &[c, i, j] : cand)
            {
                if (ti[i] || ej[j])
                    continue;
                ti[i] = ej[j] = true;
                const double da = circular_distance_deg(set.paths[j].azimuth_deg, sc.paths[i].azimuth_deg);
                const double dd = std::abs(set.paths[j].delay - sc.paths[i].delay);
                const double dp = std::abs(to_db(set.paths[j].power) - to_db(std::norm(sc.paths[i].gain)));
                worst_az = std::max(worst_az, da);
                worst_delay = std::max(worst_delay, dd);
                worst_power = std::max(worst_power, dp);
                within = within && da <= 1.0 && dd <= 0.25e-9 && dp <= 1.0;
            }
        }
        const bool pass = exact * 100 >= 95 * scenes && within;
        return {pass, "exact path count " + std::to_string(exact) + "/" + std::to_string(scenes) +
                          ", worst azimuth " + fmt("%.3f", worst_az) + " deg, delay " +
                          fmt("%.3f", worst_delay * 1e9) + " ns, power " + fmt("%.2f", worst_power) + " dB"};
    }

    // ---- 5 ---------------------------------------------------------------

    Outcome parameter_oracle()
    {
        std::mt19937_64 rng(5150);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst_rel = 0.0, worst_rot = 0.0;
        std::string worst_name = "-";
        auto track = [&](const char *name, double a, long double b) {
            double r = 0.0;
            if (std::isinf(a) || std::isinf(static_cast<double>(b)))
                r = (std::isinf(a) && std::isinf(static_cast<double>(b))) ? 0.0 : 1.0;
            else if (b == 0.0L)
                r = a == 0.0 ? 0.0 : 1.0;
            else
                r = static_cast<double>(std::abs(static_cast<long double>(a) - b) / std::abs(b));
            if (r > worst_rel)
            {
                worst_rel = r;
                worst_name = name;
            }
        };
        for (int t = 0; t < 1000; ++t)
        {
            PathSet set;
            const int n = 1 + static_cast<int>(U(rng) * 30.0);
            for (int i = 0; i < n; ++i)
                set.paths.push_back({1e-8 + 1e-6 * U(rng), 360.0 * U(rng), from_db(-60.0 * U(rng) - 50.0)});
            const auto c = compute_params(set);
            const auto o = oracle::params(set.paths);
            track("total power", c.total_power, o.total_power);
            track("path loss", c.path_loss_db, o.path_loss_db);
            track("K-factor", c.k_factor, o.k_factor);
            track("delay spread", c.rms_delay_spread, o.delay_spread);
            track("mean delay", c.mean_delay, o.mean_delay);
            track("angular spread", c.rms_angular_spread_deg, o.angular_spread_deg);
            track("path count", static_cast<double>(c.num_paths), static_cast<long double>(o.num_paths));

            auto rotated = set;
            const double delta = 360.0 * U(rng);
            for (auto &p : rotated.paths)
                p.azimuth_deg = wrap_degrees(p.azimuth_deg + delta);
            const double a = c.rms_angular_spread_deg;
            const double b = rms_angular_spread_deg(rotated.paths);
            worst_rot = std::max(worst_rot, std::abs(a - b) / std::max(a, 1.0));
        }
        return {worst_rel <= 1e-10 && worst_rot <= 1e-12, "1000 sets, worst relative deviation " +
                                                               fmt("%.2e", worst_rel) + " (" + worst_name +
                                                               "), rotation " + fmt("%.2e", worst_rot)};
    }

    // ---- 6 ---------------------------------------------------------------

    Outcome ci_fit_recovery()
    {
        std::ostringstream d;
        bool pass = true;
        std::mt19937_64 rng(6);
        std::normal_distribution<double> noise(0.0, 0.5);
        struct Case
        {
            double n, f0, gtx, grx;
        };
        for (const Case &c : {Case{1.72, 14e9, 4.0, 4.0}, Case{1.78, 160e9, 7.0, 9.0}, Case{2.0, 14e9, 4.0, 4.0}})
        {
            const double fspl1 = 20.0 * std::log10(4.0 * kPi * c.f0 / kSpeedOfLight);
            std::vector<double> dist, clean, noisy;
            for (int i = 0; i < 10; ++i)
            {
                dist.push_back(3.30 + 4.05 * i);
                const double pl = fspl1 + 10.0 * c.n * std::log10(dist.back()) + c.gtx + c.grx;
                clean.push_back(pl);
                noisy.push_back(pl + noise(rng));
            }
            const double e0 = ci_fit(dist, clean, c.f0, c.gtx, c.grx).exponent - c.n;
            const double e1 = ci_fit(dist, noisy, c.f0, c.gtx, c.grx).exponent - c.n;
            pass = pass && std::abs(e0) <= 1e-6 && std::abs(e1) <= 0.05;
            d << "n=" << c.n << ": noiseless " << fmt("%.1e", e0) << ", noisy " << fmt("%+.4f", e1) << "; ";
        }
        return {pass, d.str()};
    }

    // ---- 7 ---------------------------------------------------------------

    Outcome window_quality()
    {
        std::ostringstream d;
        bool pass = true;
        for (std::size_t N : {256u, 1638u, 6554u})
        {
            const double psl = measured_psl_db(design_ultraspherical(N, 70.0, 1.0).coefficients);
            pass = pass && psl <= -70.0;
            d << "PSL(" << N << ")=" << fmt("%.2f", psl) << " dB; ";
        }
        double err = 0.0;
        for (std::size_t N : {51u, 64u, 257u, 1024u})
        {
            const auto w = design_ultraspherical(N, 70.0, 0.0);
            const auto ref = oracle::dolph_chebyshev(N, 70.0);
            for (std::size_t n = 0; n < N; ++n)
                err = std::max(err, std::abs(w.coefficients[n] - ref[n]));
        }
        pass = pass && err <= 1e-9;
        d << "alpha=0 vs Dolph-Chebyshev max error " << fmt("%.1e", err);
        return {pass, d.str()};
    }

    // ---- 8 ---------------------------------------------------------------

    Outcome fzc_autocorrelation()
    {
        std::ostringstream d;
        bool pass = true;
        std::mt19937_64 rng(8);
        for (std::size_t M : {1021u, 4096u, 100000u})
        {
            const auto seq = fzc_generate(M, 1);
            // every lag through the transform domain
            std::vector<cd> x(seq.samples);
            fft::forward(x);
            for (auto &v : x)
                v = std::norm(v);
            fft::backward(x);
            double worst = 0.0;
            for (std::size_t lag = 1; lag < M; ++lag)
                worst = std::max(worst, std::abs(x[lag]) / static_cast<double>(M));
            // direct sums: all lags for the short sequences, a random sample for the long one
            double direct = 0.0;
            std::uniform_int_distribution<std::size_t> lag_of(1, M - 1);
            const std::size_t count = M <= 4096 ? M - 1 : 64;
            for (std::size_t i = 0; i < count; ++i)
                direct = std::max(direct, std::abs(oracle::autocorr(seq.samples, M <= 4096 ? i + 1 : lag_of(rng))));
            worst = std::max(worst, direct);
            pass = pass && worst <= 1e-12 * static_cast<double>(M);
            d << "M=" << M << ": " << fmt("%.1e", worst) << " (limit " << fmt("%.1e", 1e-12 * static_cast<double>(M))
              << "); ";
        }
        return {pass, d.str()};
    }

    // ---- 9 ---------------------------------------------------------------

    Outcome noise_floor()
    {
        std::ostringstream d;
        bool pass = true;
        struct Case
        {
            const char *name;
            std::size_t M;
            double target;
        };
        for (const Case &c : {Case{"fr3_14ghz", 2048, -126.0}, Case{"subthz_160ghz", 1024, -117.0}})
        {
            auto p = preset(c.name);
            const std::size_t full_M = p.sounder.sequence_length;
            p.sounder.sequence_length = c.M;
            p.sounder.sequence_duration = static_cast<double>(c.M) / p.sounder.bandwidth;
            Scene sc;
            sc.tx_rx_distance = 1.0;
            sc.noise_floor_db = c.target;
            SynthOptions so;
            so.noise_seed = 9;
            const auto proc = process_capture(synthesize_idsf(sc, p.sounder, p.eval, so), p.sounder, p.eval);
            const double floor = envelope_floor_db(envelope_and_pdp(proc));
            pass = pass && std::abs(floor - c.target) <= 1.0;

            // the raw noise variance that was injected, and what it becomes at the full sequence length:
            // the matched filter gain grows with the in-band bin count
            const double per_var = noise_floor_per_unit_variance(p.sounder, p.eval);
            const double raw_var_db = c.target - to_db(per_var);
            const double rescale_db = 10.0 * std::log10(static_cast<double>(full_M) / static_cast<double>(c.M));
            d << c.name << " (K=" << p.sounder.num_virtual_antennas << ", L_D=" << p.eval.spectral_filter_length
              << ", M=" << c.M << "): floor " << fmt("%.2f", floor) << " dB (target " << c.target
              << "), raw noise variance " << fmt("%.1f", raw_var_db) << " dB, "
              << fmt("%.1f", raw_var_db + rescale_db) << " dB at M=" << full_M << "; ";
        }
        return {pass, d.str()};
    }

    // ---- 10 --------------------------------------------------------------

    Outcome determinism()
    {
        cli::Scenario sc;
        sc.name = "determinism";
        sc.config = preset("desk_fr3");
        sc.mode = SynthMode::full_waveform;
        sc.seed = 424242;
        for (int i = 0; i < 2; ++i)
        {
            cli::TestPoint tp;
            tp.label = "P" + std::to_string(i + 1);
            tp.scene.tx_rx_distance = 2.0 + 6.0 * i;
            tp.scene.noise_floor_db = -115.0;
            tp.scene.rotating_antenna_pattern = cli::default_rx_pattern(sc.config.sounder);
            const double los = tp.scene.tx_rx_distance / kSpeedOfLight;
            tp.scene.paths = {{los, 200.0, std::polar(1e-3, 0.3)},
                              {los + 37e-9, 75.0, std::polar(5e-4, 1.9)},
                              {los + 120e-9, 310.0, std::polar(2e-4, -2.0)}};
            sc.points.push_back(tp);
        }
        const auto base = fs::temp_directory_path() / ("vuca_accept_" + std::to_string(::getpid()));
        fs::remove_all(base);
        cli::E2eOptions opt;
        opt.keep_idsf = true;
        cli::run_e2e(sc, (base / "a").string(), opt);
        cli::run_e2e(sc, (base / "b").string(), opt);
        std::size_t files = 0, differ = 0;
        for (const auto &e : fs::recursive_directory_iterator(base / "a"))
        {
            if (!e.is_regular_file())
                continue;
            ++files;
            const auto other = base / "b" / fs::relative(e.path(), base / "a");
            if (!fs::exists(other) || read_text(e.path().string()) != read_text(other.string()))
                ++differ;
        }
        std::size_t files_b = 0;
        for (const auto &e : fs::recursive_directory_iterator(base / "b"))
            files_b += e.is_regular_file() ? 1 : 0;
        fs::remove_all(base);
        return {files > 0 && differ == 0 && files == files_b,
                std::to_string(files) + " files compared, " + std::to_string(differ) + " differ"};
    }
}

int main()
{
    struct Criterion
    {
        const char *name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"k_min reproduction", kmin_values},
        {"spectral filter gain", spectral_filter_gain},
        {"rotation delay-shift bound", doppler_delay_shift},
        {"end-to-end recovery", end_to_end_recovery},
        {"parameter oracle equivalence", parameter_oracle},
        {"close-in fit", ci_fit_recovery},
        {"window quality", window_quality},
        {"FZC autocorrelation", fzc_autocorrelation},
        {"noise floor calibration", noise_floor},
        {"e2e determinism", determinism},
    };

    int failed = 0;
    int index = 0;
    for (const auto &c : criteria)
    {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
