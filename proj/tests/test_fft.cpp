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

#include <doctest.h>

#include <random>
#include <vector>

#include "zakhrt/fft.hpp"

using namespace zakhrt;

namespace {

// O(n^2) reference with the same kernel e^{-2 pi i k s / n}
std::vector<cplx> naive_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      out[k] += x[s] * unit_phase(static_cast<double>(k) * static_cast<double>(s) /
                                  static_cast<double>(n));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("delta transforms to exact ones") {
  std::vector<cplx> x(16, cplx{0.0, 0.0});
  x[0] = 1.0;
  fft_pow2(x);
  for (const cplx& v : x) CHECK(v == cplx(1.0, 0.0));
}

TEST_CASE("matches the quadratic reference") {
  std::mt19937_64 rng(23);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (std::size_t n : {2UL, 8UL, 64UL, 256UL}) {
    std::vector<cplx> x(n);
    for (auto& v : x) v = {u(), u()};
    const std::vector<cplx> want = naive_dft(x);
    std::vector<cplx> got = x;
    fft_pow2(got);
    double scale = 0.0;
    for (const auto& w : want) scale = std::max(scale, std::abs(w));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-13 * scale);
  }
}

TEST_CASE("parseval") {
  std::mt19937_64 rng(29);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::vector<cplx> x(128);
  for (auto& v : x) v = {u(), u()};
  double in = 0.0;
  for (const auto& v : x) in += std::norm(v);
  fft_pow2(x);
  double out = 0.0;
  for (const auto& v : x) out += std::norm(v);
  CHECK(out == doctest::Approx(128.0 * in).epsilon(1e-12));
}

TEST_CASE("axis transform equals per-line reference") {
  std::mt19937_64 rng(31);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const std::size_t M = 8;
  std::vector<cplx> grid(M * M);
  for (auto& v : grid) v = {u(), u()};

  std::vector<cplx> rows = grid;
  fft_axis(rows, 2, M, 1);
  for (std::size_t r = 0; r < M; ++r) {
    std::vector<cplx> line(grid.begin() + static_cast<std::ptrdiff_t>(r * M),
                           grid.begin() + static_cast<std::ptrdiff_t>((r + 1) * M));
    const std::vector<cplx> want = naive_dft(line);
    for (std::size_t k = 0; k < M; ++k) CHECK(std::abs(rows[r * M + k] - want[k]) < 1e-13);
  }

  std::vector<cplx> cols = grid;
  fft_axis(cols, 2, M, 0);
  for (std::size_t c = 0; c < M; ++c) {
    std::vector<cplx> line(M);
    for (std::size_t r = 0; r < M; ++r) line[r] = grid[r * M + c];
    const std::vector<cplx> want = naive_dft(line);
    for (std::size_t k = 0; k < M; ++k) CHECK(std::abs(cols[k * M + c] - want[k]) < 1e-13);
  }
}

TEST_CASE("rejects non power of two") {
  std::vector<cplx> x(12);
  CHECK_THROWS_AS(fft_pow2(x), std::invalid_argument);
  std::vector<cplx> empty;
  CHECK_THROWS_AS(fft_pow2(empty), std::invalid_argument);
}
