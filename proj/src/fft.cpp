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

#include "zakhrt/fft.hpp"

#include <stdexcept>
#include <vector>

namespace zakhrt {

void fft_pow2(std::span<cplx> data) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
  if (n == 1) return;

  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        // exact dyadic angle k/len
        const cplx w = unit_phase(static_cast<double>(k) / static_cast<double>(len));
        const cplx u = data[base + k];
        const cplx t = w * data[base + k + half];
        data[base + k] = u + t;
        data[base + k + half] = u - t;
      }
    }
  }
}

void fft_axis(std::span<cplx> data, int rank, std::size_t extent, int axis) {
  if (axis < 0 || axis >= rank) throw std::invalid_argument("fft axis out of range");
  const std::size_t total = data.size();
  std::size_t stride = 1;
  for (int d = rank - 1; d > axis; --d) stride *= extent;
  const std::size_t block = stride * extent;
  std::vector<cplx> line(extent);
  for (std::size_t start = 0; start < total; start += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (std::size_t s = 0; s < extent; ++s) line[s] = data[start + off + s * stride];
      fft_pow2(line);
      for (std::size_t s = 0; s < extent; ++s) data[start + off + s * stride] = line[s];
    }
  }
}

}  // namespace zakhrt
