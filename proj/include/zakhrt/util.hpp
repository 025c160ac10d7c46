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

#ifndef ZAKHRT_UTIL_HPP_
#define ZAKHRT_UTIL_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace zakhrt {

using cplx = std::complex<double>;

// Reduce x to [0, 1). The result is exact whenever x and x mod 1 are both
// representable (dyadic rationals in particular).
double frac_unit(double x);

// e^{-2*pi*i*r}. The argument is reduced to an eighth of a period before
// calling libm, and the quarter-period values are exact:
//   unit_phase(0) == 1, unit_phase(0.25) == -i,
//   unit_phase(0.5) == -1, unit_phase(0.75) == i.
// Exactness at r = k/4 is what makes integer-lattice cancellations in
// trigonometric polynomials land on 0.0 instead of 1e-16 noise.
cplx unit_phase(double r);

bool is_power_of_two(int m);

// ---- multi-index helpers (row-major lexicographic) ----

// extents^n sizes; throws std::overflow_error past 2^62.
std::size_t pow_size(std::size_t base, int exp);

// Iterates idx over {0..extent-1}^n in row-major lexicographic order.
// fn(flat, idx) with flat the row-major linear index.
void for_each_index(int n, std::size_t extent,
                    const std::function<void(std::size_t, std::span<const std::size_t>)>& fn);

// Decodes a row-major flat index into digits base `extent`.
void unflatten(std::size_t flat, int n, std::size_t extent, std::size_t* out);

// ---- deterministic reductions ----
//
// Fixed topology: the input is cut into blocks of kReduceBlock elements,
// each block is summed sequentially with Neumaier compensation, and the
// block sums are combined pairwise in index order. The result does not
// depend on thread count or SIMD width.

inline constexpr std::size_t kReduceBlock = 4096;

double reduce_sum(std::span<const double> xs);
double reduce_sum_abs2(std::span<const cplx> xs);
// sum_i a[i] * conj(b[i])
cplx reduce_dot_conj(std::span<const cplx> a, std::span<const cplx> b);

// Streaming Neumaier accumulator for sequential loops (single fixed order).
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x);
  double value() const { return sum + comp; }
};

// ---- deterministic parallelism ----

// Worker cap from ZAKHRT_THREADS (>=1), else hardware concurrency.
int worker_count();

// Runs fn(block) for block = 0..blocks-1 on up to worker_count() threads.
// Blocks must write to disjoint state; the decomposition is part of the
// caller's contract and never depends on the thread count.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& fn);

// Convenience: split [0, count) into chunks of `chunk` and run
// fn(begin, end) per chunk in parallel.
void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace zakhrt

#endif  // ZAKHRT_UTIL_HPP_
