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

#ifndef VUCA_WAVEFORM_HPP
#define VUCA_WAVEFORM_HPP

#include "vuca/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vuca
{
    // Frank-Zadoff-Chu sounding sequence, unit magnitude, perfect periodic autocorrelation
    struct FzcSequence
    {
        std::size_t length = 0;
        std::int64_t root = 1;
        std::vector<cd> samples;
    };

    // samples[n] = exp(-j pi root n^2 / M)       for even M
    //            = exp(-j pi root n (n+1) / M)   for odd M
    // Throws DomainError for M < 2 or gcd(root, M) != 1.
    FzcSequence fzc_generate(std::size_t length, std::int64_t root = 1);

    enum class WindowKind
    {
        ultraspherical,
        tukey,
        rect
    };

    struct Window
    {
        WindowKind kind = WindowKind::rect;
        std::vector<double> coefficients; // peak-normalized to 1
        double psl_db = 0.0;              // ultraspherical only
        double slope_taper = 0.0;         // ultraspherical only
        double tukey_alpha = 0.0;         // tukey only

        std::size_t size() const { return coefficients.size(); }
    };

    // Ultraspherical (Gegenbauer) window of given length whose highest spectral sidelobe is 'psl_db'
    // below the mainlobe.
    //
    // The window spectrum is the Gegenbauer polynomial C_{N-1}^{mu}(x0 cos(theta/2)) sampled at the
    // N DFT frequencies and inverse transformed. The slope taper is the polynomial order mu:
    //   mu = 0  Chebyshev polynomial of the first kind, equiripple sidelobes (Dolph-Chebyshev window)
    //   mu = 1  Chebyshev polynomial of the second kind, sidelobes decaying away from the mainlobe
    // x0 > 1 sets the mainlobe-to-sidelobe ratio and is found by bisection.
    //
    // A design is rejected (DomainError naming the achievable PSL) when the first spectral null would
    // lie further than N/10 bins from DC.
    Window design_ultraspherical(std::size_t length, double psl_db, double slope_taper);

    // Largest PSL design_ultraspherical accepts for the given length and slope taper
    double ultraspherical_max_psl_db(std::size_t length, double slope_taper);

    // Tapered cosine: flat centre of (1 - alpha) * L samples, cosine half-tapers of alpha * L in total.
    // alpha = 0 is rectangular, alpha = 1 is a Hann window. Throws DomainError for alpha outside [0, 1].
    Window design_tukey(std::size_t length, double alpha);

    Window design_rect(std::size_t length);

    // Gegenbauer polynomial C_n^mu(x); mu == 0 evaluates the Chebyshev polynomial T_n(x)
    double gegenbauer(std::size_t n, double mu, double x);

    // Highest sidelobe of a window in dB relative to its mainlobe, measured on a
    // 'padding'-times zero-padded power spectrum (negative number)
    double measured_psl_db(std::span<const double> window, std::size_t padding = 16);

    // Frequency-domain matched filter for one sounding period.
    //
    // The in-band bins (round(M*B/fS) bins centred on DC) of DFT(rx) * conj(DFT(ref)) are weighted by
    // the window, divided by the back-to-back calibration spectrum when one is given, zero-padded to
    // oversampling * M bins and inverse transformed. The result is scaled so that rx == ref gives a
    // 0 dB peak at delay 0. Output delay n corresponds to n / (oversampling * fS) seconds.
    class Correlator
    {
    public:
        Correlator(const FzcSequence &reference, double sampling_rate, double bandwidth, Window window,
                   std::size_t oversampling, std::optional<std::vector<cd>> calibration = std::nullopt);

        std::vector<cd> correlate(std::span<const cd> rx_block) const;
        void correlate_into(std::span<const cd> rx_block, std::span<cd> out) const;

        std::size_t sequence_length() const { return sequence_length_; }
        std::size_t output_length() const { return sequence_length_ * oversampling_; }
        std::size_t in_band_bins() const { return in_band_.size(); }
        double delay_step() const { return 1.0 / (static_cast<double>(oversampling_) * sampling_rate_); }

        // Processed noise power per unit raw noise variance: sum(w^2) / (sum w)^2
        double noise_gain() const { return noise_gain_; }

        // Signed DFT bin index (relative to DC) of in-band position i
        std::ptrdiff_t bin_of(std::size_t i) const { return in_band_[i]; }

    private:
        std::size_t sequence_length_;
        std::size_t oversampling_;
        double sampling_rate_;
        std::vector<std::ptrdiff_t> in_band_; // signed bin index per in-band position
        std::vector<cd> weights_;             // conj(S_k) * w_k / cal_k * scale
        double noise_gain_ = 0.0;
    };

    std::vector<cd> correlate_frequency_domain(std::span<const cd> rx_block, const FzcSequence &reference,
                                               double sampling_rate, double bandwidth, const Window &window,
                                               std::size_t oversampling);

    // Location of the largest magnitude sample refined by a parabola through log-power of the
    // three samples around it, in fractional sample units (circular)
    double peak_position(std::span<const cd> cir);

    // CSV export for inspection: index, coefficient
    void write_window_csv(const std::string &path, const Window &window);
}

#endif
