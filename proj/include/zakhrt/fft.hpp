// Copyright 2026 The zakhrt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZAKHRT_FFT_HPP_
#define ZAKHRT_FFT_HPP_

#include <cstddef>
#include <span>

#include "zakhrt/util.hpp"

namespace zakhrt {

// In-place forward DFT, kernel e^{-2 pi i k s / N}. N = data.size() must be
// a power of two. Radix-2 decimation in time; deterministic for fixed input.
void fft_pow2(std::span<cplx> data);

// Forward DFT along one axis of a row-major array of shape extent^rank.
void fft_axis(std::span<cplx> data, int rank, std::size_t extent, int axis);

}  // namespace zakhrt

#endif  // ZAKHRT_FFT_HPP_
