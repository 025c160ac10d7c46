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

#include <cmath>
#include <limits>

#include "zakhrt/kernels.hpp"

// Reference kernels. Component arithmetic is written out (no
// std::complex operator*) so every variant shares one rounding story.

namespace zakhrt::kernels {
namespace {

void cmul_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void cabs_scalar(const cplx* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

void vmul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double vmax_scalar(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = n ? 0.0 : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    m = d > m ? d : m;
  }
  return m;
}

double max_cabs_diff_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double m = n ? 0.0 : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    const double d = std::sqrt(re * re + im * im);
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      "scalar",         cmul_scalar,         cabs_scalar, vmul_scalar,
      vmax_scalar,      max_abs_diff_scalar, max_cabs_diff_scalar,
  };
  return ops;
}

}  // namespace zakhrt::kernels
