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

// AVX2 variants. Each lane performs the same IEEE operations in the same
// order as the scalar reference (mul/add/sub/sqrt/max only; FMA is not
// used), so outputs are bit-identical to scalar_ops(). Tails run the
// scalar expression.

#include "zakhrt/kernels.hpp"

#if defined(ZAKHRT_AVX2_BUILD) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace zakhrt::kernels {
namespace {

// a*b for two packed complex doubles: [ar0 ai0 ar1 ai1]
inline __m256d cmul_pd(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);        // [ar0 ar0 ar1 ar1]
  const __m256d a_im = _mm256_permute_pd(a, 0xF);   // [ai0 ai0 ai1 ai1]
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);   // [bi0 br0 bi1 br1]
  const __m256d t0 = _mm256_mul_pd(a_re, b);        // [ar*br ar*bi ...]
  const __m256d t1 = _mm256_mul_pd(a_im, b_sw);     // [ai*bi ai*br ...]
  return _mm256_addsub_pd(t0, t1);                  // [ar*br-ai*bi, ar*bi+ai*br, ...]
}

void cmul_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    const __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(out + i), cmul_pd(va, vb));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

// Splits 4 packed complex (two registers) into re/im vectors; the lane
// order comes back scrambled as [0 2 1 3] and is restored on output.
inline void deinterleave(__m256d lo, __m256d hi, __m256d* re, __m256d* im) {
  *re = _mm256_unpacklo_pd(lo, hi);  // [r0 r2 r1 r3]
  *im = _mm256_unpackhi_pd(lo, hi);  // [i0 i2 i1 i3]
}

void cabs_avx2(const cplx* a, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    const __m256d hi = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i + 2));
    __m256d re, im;
    deinterleave(lo, hi, &re, &im);
    const __m256d mag =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(mag, 0xD8));  // [0 2 1 3] -> [0 1 2 3]
  }
  for (; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

void vmul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

inline double hmax_pd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

double vmax_avx2(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(a);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
    m = hmax_pd(acc);
  }
  for (; i < n; ++i) m = a[i] > m ? a[i] : m;
  return m;
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  double m = n ? 0.0 : -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
      acc = _mm256_max_pd(acc, _mm256_and_pd(d, absmask));
    }
    m = hmax_pd(acc);
  }
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    m = d > m ? d : m;
  }
  return m;
}

double max_cabs_diff_avx2(const cplx* a, const cplx* b, std::size_t n) {
  double m = n ? 0.0 : -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d dlo = _mm256_sub_pd(_mm256_loadu_pd(reinterpret_cast<const double*>(a + i)),
                                        _mm256_loadu_pd(reinterpret_cast<const double*>(b + i)));
      const __m256d dhi =
          _mm256_sub_pd(_mm256_loadu_pd(reinterpret_cast<const double*>(a + i + 2)),
                        _mm256_loadu_pd(reinterpret_cast<const double*>(b + i + 2)));
      __m256d re, im;
      deinterleave(dlo, dhi, &re, &im);
      const __m256d mag =
          _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
      acc = _mm256_max_pd(acc, mag);
    }
    m = hmax_pd(acc);
  }
  for (; i < n; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    const double d = std::sqrt(re * re + im * im);
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops{
      "avx2",      cmul_avx2,         cabs_avx2, vmul_avx2,
      vmax_avx2,   max_abs_diff_avx2, max_cabs_diff_avx2,
  };
  return &ops;
}

}  // namespace zakhrt::kernels

#else

namespace zakhrt::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace zakhrt::kernels

#endif
