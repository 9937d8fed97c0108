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

#ifndef VUCA_FFT_HPP
#define VUCA_FFT_HPP

#include <complex>
#include <span>

namespace vuca::fft
{
    // Unnormalized in-place DFTs:
    //   forward:  X[k] = sum_n x[n] exp(-j 2 pi k n / N)
    //   backward: x[n] = sum_k X[k] exp(+j 2 pi k n / N)
    // Plans are cached per length and direction; calls are thread-safe.
    void forward(std::span<std::complex<double>> data);
    void backward(std::span<std::complex<double>> data);
}

#endif
