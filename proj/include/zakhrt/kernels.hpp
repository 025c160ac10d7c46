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

#ifndef ZAKHRT_KERNELS_HPP_
#define ZAKHRT_KERNELS_HPP_

#include <complex>
#include <cstddef>

namespace zakhrt::kernels {

using cplx = std::complex<double>;

// Dense array kernels behind the grid algebra. Two implementations exist:
// a scalar reference and an AVX2 variant. Both evaluate the exact same
// per-element expression (mul/add/sub/sqrt/max, no FMA), so their outputs
// are bit-identical; the equivalence suite asserts this. Reductions other
// than max live in util.hpp and stay scalar: compensated summation has a
// serial data dependence and its order is part of the determinism contract.
struct Ops {
  const char* name;
  // out[i] = a[i] * b[i] (complex product, re = ar*br - ai*bi, im = ar*bi + ai*br)
  void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = sqrt(re^2 + im^2); no under/overflow guard, operands are O(1)
  void (*cabs)(const cplx* a, double* out, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*vmul)(const double* a, const double* b, double* out, std::size_t n);
  // max_i a[i]; n == 0 yields -inf
  double (*vmax)(const double* a, std::size_t n);
  // max_i |a[i] - b[i]|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  // max_i |a[i] - b[i]| with complex modulus
  double (*max_cabs_diff)(const cplx* a, const cplx* b, std::size_t n);
};

const Ops& scalar_ops();
// nullptr when the build or the CPU lacks AVX2.
const Ops* avx2_ops();

// Selected once per process: ZAKHRT_KERNEL=scalar|avx2 forces a variant
// (unsupported forcings fall back to scalar), otherwise CPU detection.
const Ops& active();

}  // namespace zakhrt::kernels

#endif  // ZAKHRT_KERNELS_HPP_
