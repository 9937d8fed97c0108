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

#include "vuca/waveform.hpp"
#include "vuca/csv_io.hpp"
#include "vuca/error.hpp"
#include "vuca/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vuca
{
    FzcSequence fzc_generate(std::size_t length, std::int64_t root)
    {
        if (length < 2)
            throw DomainError("fzc_generate: sequence length must be >= 2");
        if (length >= (std::size_t{1} << 31))
            throw DomainError("fzc_generate: sequence length must be below 2^31");
        const auto M = static_cast<std::int64_t>(length);
        if (std::gcd(root, M) != 1)
            throw DomainError("fzc_generate: root " + std::to_string(root) + " is not coprime with length " +
                              std::to_string(length));

        FzcSequence seq;
        seq.length = length;
        seq.root = root;
        seq.samples.resize(length);

        // The phase is pi * root * q / M with q reduced modulo 2M in integer arithmetic,
        // so long sequences keep full phase accuracy.
        const std::int64_t two_m = 2 * M;
        const std::int64_t r = ((root % two_m) + two_m) % two_m;
        const bool odd = (M % 2) != 0;
        for (std::int64_t n = 0; n < M; ++n)
        {
            const std::int64_t q = odd ? (n * (n + 1)) % two_m : (n * n) % two_m;
            // r, q < 2M < 2^32, the product fits in 64 bits
            const auto rq = static_cast<std::int64_t>((static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(q)) %
                                                      static_cast<std::uint64_t>(two_m));
            const double phase = -kPi * static_cast<double>(rq) / static_cast<double>(M);
            seq.samples[static_cast<std::size_t>(n)] = std::polar(1.0, phase);
        }
        return seq;
    }

    double gegenbauer(std::size_t n, double mu, double x)
    {
        const double nn = static_cast<double>(n);
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;

        if (mu == 0.0)
        {
            if (std::abs(x) <= 1.0)
                return std::cos(nn * std::acos(x));
            const double v = std::cosh(nn * std::acosh(std::abs(x)));
            return x > 0.0 ? v : parity * v;
        }

        if (mu == 1.0)
        {
            if (std::abs(x) < 1.0)
            {
                const double theta = std::acos(x);
                const double s = std::sin(theta);
                if (s < 1e-300)
                    return x > 0.0 ? nn + 1.0 : parity * (nn + 1.0);
                return std::sin((nn + 1.0) * theta) / s;
            }
            if (std::abs(x) == 1.0)
                return x > 0.0 ? nn + 1.0 : parity * (nn + 1.0);
            const double t = std::acosh(std::abs(x));
            const double v = std::sinh((nn + 1.0) * t) / std::sinh(t);
            return x > 0.0 ? v : parity * v;
        }

        if (n == 0)
            return 1.0;
        double prev = 1.0;
        double cur = 2.0 * mu * x;
        for (std::size_t k = 1; k < n; ++k)
        {
            const double kk = static_cast<double>(k);
            const double next = (2.0 * x * (kk + mu) * cur - (kk + 2.0 * mu - 1.0) * prev) / (kk + 1.0);
            prev = cur;
            cur = next;
        }
        return cur;
    }

    namespace
    {
        // Shape of C_n^mu(cos theta) near theta = 0: the first zero (mainlobe edge) and the
        // magnitude of the first sidelobe, which is the largest one for mu >= 0.
        struct PolynomialShape
        {
            double first_zero = 0.0;     // largest zero of C_n^mu, as x
            double sidelobe_level = 0.0; // max |C_n^mu(x)| for |x| <= first_zero
        };

        PolynomialShape polynomial_shape(std::size_t n, double mu)
        {
            auto f = [&](double theta) { return gegenbauer(n, mu, std::cos(theta)); };
            const double step = kPi / (8.0 * (static_cast<double>(n) + mu + 1.0));

            auto next_crossing = [&](double from)
            {
                double a = from;
                double fa = f(a);
                for (int i = 0; i < 64; ++i)
                {
                    double b = a + step;
                    const double fb = f(b);
                    if ((fa > 0.0) != (fb > 0.0))
                    {
                        for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it)
                        {
                            const double m = 0.5 * (a + b);
                            const double fm = f(m);
                            if ((fm > 0.0) == (fa > 0.0))
                                a = m, fa = fm;
                            else
                                b = m;
                        }
                        return 0.5 * (a + b);
                    }
                    a = b;
                    fa = fb;
                }
                throw NumericError("ultraspherical: no polynomial zero found");
            };

            const double z1 = next_crossing(0.0);
            const double z2 = next_crossing(z1 + 1e-9 * step);

            // golden-section search for the sidelobe peak between the first two zeros
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = z1, b = z2;
            double c = b - g * (b - a), d = a + g * (b - a);
            double fc = std::abs(f(c)), fd = std::abs(f(d));
            for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it)
            {
                if (fc > fd)
                {
                    b = d, d = c, fd = fc;
                    c = b - g * (b - a), fc = std::abs(f(c));
                }
                else
                {
                    a = c, c = d, fc = fd;
                    d = a + g * (b - a), fd = std::abs(f(d));
                }
            }
            return {std::cos(z1), std::max(fc, fd)};
        }

        // Upper bound on x0: the first null of C(x0 cos(theta/2)) must stay within N/10 bins
        double max_scale(const PolynomialShape &shape)
        {
            return shape.first_zero / std::cos(kPi / 10.0);
        }

        void check_ultraspherical_args(std::size_t length, double slope_taper)
        {
            if (length < 8)
                throw DomainError("design_ultraspherical: length must be >= 8");
            if (!(slope_taper >= 0.0) || !std::isfinite(slope_taper))
                throw DomainError("design_ultraspherical: slope taper must be >= 0");
        }
    }

    double ultraspherical_max_psl_db(std::size_t length, double slope_taper)
    {
        check_ultraspherical_args(length, slope_taper);
        const std::size_t n = length - 1;
        const auto shape = polynomial_shape(n, slope_taper);
        const double top = gegenbauer(n, slope_taper, max_scale(shape));
        return 20.0 * std::log10(top / shape.sidelobe_level);
    }

    Window design_ultraspherical(std::size_t length, double psl_db, double slope_taper)
    {
        check_ultraspherical_args(length, slope_taper);
        if (!(psl_db > 0.0) || !std::isfinite(psl_db))
            throw DomainError("design_ultraspherical: PSL must be > 0 dB");

        const std::size_t n = length - 1;
        const double mu = slope_taper;
        const auto shape = polynomial_shape(n, mu);
        const double target = std::pow(10.0, psl_db / 20.0) * shape.sidelobe_level;

        double lo = shape.first_zero;
        double hi = max_scale(shape);
        const double top = gegenbauer(n, mu, hi);
        if (top < target)
        {
            std::ostringstream msg;
            msg << "design_ultraspherical: PSL " << psl_db << " dB is not achievable with length " << length
                << " (achievable PSL " << 20.0 * std::log10(top / shape.sidelobe_level) << " dB)";
            throw DomainError(msg.str());
        }

        // C_n^mu is increasing beyond its largest zero
        for (int it = 0; it < 300 && hi - lo > 2e-16 * hi; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (gegenbauer(n, mu, mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        const double x0 = 0.5 * (lo + hi);

        // Sample the real amplitude response at the N DFT frequencies, apply the linear phase of a
        // window centred at (N-1)/2 and transform back.
        const double N = static_cast<double>(length);
        std::vector<cd> spectrum(length);
        for (std::size_t k = 0; k < length; ++k)
        {
            const double theta = 2.0 * kPi * static_cast<double>(k) / N;
            const double amplitude = gegenbauer(n, mu, x0 * std::cos(0.5 * theta));
            spectrum[k] = amplitude * std::polar(1.0, -0.5 * theta * (N - 1.0));
        }
        fft::backward(spectrum);

        Window w;
        w.kind = WindowKind::ultraspherical;
        w.psl_db = psl_db;
        w.slope_taper = slope_taper;
        w.coefficients.resize(length);
        double peak = 0.0;
        for (std::size_t i = 0; i < length; ++i)
        {
            w.coefficients[i] = spectrum[i].real();
            peak = std::max(peak, w.coefficients[i]);
        }
        for (auto &c : w.coefficients)
            c /= peak;
        return w;
    }

    Window design_tukey(std::size_t length, double alpha)
    {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw DomainError("design_tukey: alpha must be in [0, 1]");
        if (length == 0)
            throw DomainError("design_tukey: length must be >= 1");

        Window w;
        w.kind = WindowKind::tukey;
        w.tukey_alpha = alpha;
        w.coefficients.assign(length, 1.0);
        if (length == 1 || alpha == 0.0)
            return w;

        const double span = alpha * static_cast<double>(length - 1);
        const auto width = static_cast<std::size_t>(std::floor(span / 2.0));
        for (std::size_t i = 0; i <= width && i < length; ++i)
        {
            const double v = 0.5 * (1.0 + std::cos(kPi * (-1.0 + 2.0 * static_cast<double>(i) / span)));
            w.coefficients[i] = v;
            w.coefficients[length - 1 - i] = v;
        }
        return w;
    }

    Window design_rect(std::size_t length)
    {
        if (length == 0)
            throw DomainError("design_rect: length must be >= 1");
        Window w;
        w.kind = WindowKind::rect;
        w.coefficients.assign(length, 1.0);
        return w;
    }

    double measured_psl_db(std::span<const double> window, std::size_t padding)
    {
        const std::size_t len = window.size() * padding;
        std::vector<cd> spec(len, cd{});
        for (std::size_t i = 0; i < window.size(); ++i)
            spec[i] = window[i];
        fft::forward(spec);

        std::vector<double> power(len);
        for (std::size_t i = 0; i < len; ++i)
            power[i] = std::norm(spec[i]);
        const double peak = power[0];

        std::size_t edge = 1;
        while (edge + 1 < len / 2 && power[edge + 1] < power[edge])
            ++edge;
        double side = 0.0;
        for (std::size_t i = edge; i + edge <= len; ++i)
            side = std::max(side, power[i]);
        return 10.0 * std::log10(std::max(side, 1e-300) / peak);
    }

    Correlator::Correlator(const FzcSequence &reference, double sampling_rate, double bandwidth, Window window,
                           std::size_t oversampling, std::optional<std::vector<cd>> calibration)
        : sequence_length_(reference.length), oversampling_(oversampling), sampling_rate_(sampling_rate)
    {
        if (oversampling < 1)
            throw DomainError("Correlator: oversampling must be >= 1");
        if (!(sampling_rate > 0.0) || !(bandwidth > 0.0) || bandwidth > sampling_rate)
            throw DomainError("Correlator: need 0 < bandwidth <= sampling rate");

        const std::size_t M = reference.length;
        const auto bins =
            static_cast<std::size_t>(std::llround(static_cast<double>(M) * bandwidth / sampling_rate));
        if (window.size() != bins)
            throw DomainError("Correlator: window length " + std::to_string(window.size()) +
                              " does not match the " + std::to_string(bins) + " in-band bins");
        if (calibration && calibration->size() != bins)
            throw DomainError("Correlator: calibration spectrum length does not match the in-band bins");

        std::vector<cd> ref_spectrum(reference.samples);
        fft::forward(ref_spectrum);

        const double sum_w = std::accumulate(window.coefficients.begin(), window.coefficients.end(), 0.0);
        double sum_w2 = 0.0;
        for (double c : window.coefficients)
            sum_w2 += c * c;
        noise_gain_ = sum_w2 / (sum_w * sum_w);

        const double scale = 1.0 / (static_cast<double>(M) * sum_w);
        const auto half = static_cast<std::ptrdiff_t>(bins / 2);
        in_band_.resize(bins);
        weights_.resize(bins);
        for (std::size_t i = 0; i < bins; ++i)
        {
            const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - half;
            in_band_[i] = k;
            const auto idx = static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(M)) % static_cast<std::ptrdiff_t>(M));
            cd wt = std::conj(ref_spectrum[idx]) * window.coefficients[i] * scale;
            if (calibration)
                wt /= (*calibration)[i];
            weights_[i] = wt;
        }
    }

    void Correlator::correlate_into(std::span<const cd> rx_block, std::span<cd> out) const
    {
        const std::size_t M = sequence_length_;
        const std::size_t P = output_length();
        if (rx_block.size() != M)
            throw DomainError("Correlator: rx block has " + std::to_string(rx_block.size()) + " samples, expected " +
                              std::to_string(M));
        if (out.size() != P)
            throw DomainError("Correlator: output buffer has wrong length");

        std::vector<cd> spectrum(rx_block.begin(), rx_block.end());
        fft::forward(spectrum);

        std::fill(out.begin(), out.end(), cd{});
        const auto m = static_cast<std::ptrdiff_t>(M);
        const auto p = static_cast<std::ptrdiff_t>(P);
        for (std::size_t i = 0; i < in_band_.size(); ++i)
        {
            const std::ptrdiff_t k = in_band_[i];
            out[static_cast<std::size_t>((k + p) % p)] = spectrum[static_cast<std::size_t>((k + m) % m)] * weights_[i];
        }
        fft::backward(out);
    }

    std::vector<cd> Correlator::correlate(std::span<const cd> rx_block) const
    {
        std::vector<cd> out(output_length());
        correlate_into(rx_block, out);
        return out;
    }

    std::vector<cd> correlate_frequency_domain(std::span<const cd> rx_block, const FzcSequence &reference,
                                               double sampling_rate, double bandwidth, const Window &window,
                                               std::size_t oversampling)
    {
        return Correlator(reference, sampling_rate, bandwidth, window, oversampling).correlate(rx_block);
    }

    double peak_position(std::span<const cd> cir)
    {
        if (cir.empty())
            throw DomainError("peak_position: empty input");
        std::size_t best = 0;
        for (std::size_t i = 1; i < cir.size(); ++i)
            if (std::norm(cir[i]) > std::norm(cir[best]))
                best = i;
        const std::size_t n = cir.size();
        if (n < 3 || std::norm(cir[best]) == 0.0)
            return static_cast<double>(best);

        const double l = std::norm(cir[(best + n - 1) % n]);
        const double c = std::norm(cir[best]);
        const double r = std::norm(cir[(best + 1) % n]);
        if (l <= 0.0 || r <= 0.0)
            return static_cast<double>(best);
        const double ll = std::log(l), lc = std::log(c), lr = std::log(r);
        const double denom = ll - 2.0 * lc + lr;
        double delta = denom < 0.0 ? 0.5 * (ll - lr) / denom : 0.0;
        delta = std::clamp(delta, -0.5, 0.5);
        return static_cast<double>(best) + delta;
    }

    void write_window_csv(const std::string &path, const Window &window)
    {
        std::ostringstream out;
        out.precision(17);
        out << "index,coefficient\n";
        for (std::size_t i = 0; i < window.size(); ++i)
            out << i << ',' << window.coefficients[i] << '\n';
        write_text_atomic(path, out.str());
    }
}
