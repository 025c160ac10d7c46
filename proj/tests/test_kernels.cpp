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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "zakhrt/kernels.hpp"

using namespace zakhrt;
using kernels::cplx;
using kernels::Ops;

namespace {

struct Arrays {
  std::vector<cplx> ca, cb;
  std::vector<double> da, db;
};

Arrays random_arrays(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0; };
  Arrays a;
  a.ca.resize(n);
  a.cb.resize(n);
  a.da.resize(n);
  a.db.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.ca[i] = {u(), u()};
    a.cb[i] = {u(), u()};
    a.da[i] = u();
    a.db[i] = u();
  }
  return a;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 64, 1000, 1001};

}  // namespace

TEST_CASE("scalar kernels: reference semantics") {
  const Ops& ops = kernels::scalar_ops();
  const Arrays a = random_arrays(257, 42);
  std::vector<cplx> prod(257);
  ops.cmul(a.ca.data(), a.cb.data(), prod.data(), 257);
  std::vector<double> mag(257);
  ops.cabs(a.ca.data(), mag.data(), 257);
  for (std::size_t i = 0; i < 257; ++i) {
    CHECK(std::abs(prod[i] - a.ca[i] * a.cb[i]) < 1e-15);
    CHECK(mag[i] == doctest::Approx(std::abs(a.ca[i])).epsilon(1e-15));
  }
  CHECK(ops.vmax(a.da.data(), 257) == *std::max_element(a.da.begin(), a.da.end()));
  CHECK(ops.vmax(a.da.data(), 0) == -std::numeric_limits<double>::infinity());
  double want = 0.0;
  for (std::size_t i = 0; i < 257; ++i) want = std::max(want, std::fabs(a.da[i] - a.db[i]));
  CHECK(ops.max_abs_diff(a.da.data(), a.db.data(), 257) == want);
}

// The AVX2 variants are contracts, not approximations: same per-element
// expression, no FMA, so outputs must match the scalar reference bit for
// bit on every size and alignment.
TEST_CASE("avx2 kernels are bit-identical to scalar") {
  const Ops* avx = kernels::avx2_ops();
  if (avx == nullptr) {
    MESSAGE("AVX2 unavailable on this machine; equivalence suite skipped");
    return;
  }
  const Ops& ref = kernels::scalar_ops();
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const Arrays a = random_arrays(n, 1000 + n);

    std::vector<cplx> p1(n), p2(n);
    ref.cmul(a.ca.data(), a.cb.data(), p1.data(), n);
    avx->cmul(a.ca.data(), a.cb.data(), p2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(p1[i].real() == p2[i].real());
      CHECK(p1[i].imag() == p2[i].imag());
    }

    std::vector<double> m1(n), m2(n);
    ref.cabs(a.ca.data(), m1.data(), n);
    avx->cabs(a.ca.data(), m2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(m1[i] == m2[i]);

    std::vector<double> v1(n), v2(n);
    ref.vmul(a.da.data(), a.db.data(), v1.data(), n);
    avx->vmul(a.da.data(), a.db.data(), v2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(v1[i] == v2[i]);

    CHECK(ref.vmax(a.da.data(), n) == avx->vmax(a.da.data(), n));
    CHECK(ref.max_abs_diff(a.da.data(), a.db.data(), n) ==
          avx->max_abs_diff(a.da.data(), a.db.data(), n));
    CHECK(ref.max_cabs_diff(a.ca.data(), a.cb.data(), n) ==
          avx->max_cabs_diff(a.ca.data(), a.cb.data(), n));
  }
}

TEST_CASE("active dispatch returns a working implementation") {
  const Ops& ops = kernels::active();
  CHECK(ops.name != nullptr);
  const Arrays a = random_arrays(33, 9);
  std::vector<double> mag(33);
  ops.cabs(a.ca.data(), mag.data(), 33);
  for (std::size_t i = 0; i < 33; ++i) {
    CHECK(mag[i] == doctest::Approx(std::abs(a.ca[i])).epsilon(1e-15));
  }
}
