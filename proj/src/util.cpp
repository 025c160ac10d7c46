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

#include "zakhrt/util.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace zakhrt {

double frac_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // x just below an integer can round up
  return r;
}

cplx unit_phase(double r) {
  // r mod 1, centered: rr in [-0.5, 0.5]
  const double rr = r - std::nearbyint(r);
  // quadrant split: rr = q/4 + u with |u| <= 1/8; s - q is exact (Sterbenz)
  const double s = 4.0 * rr;
  const int q = static_cast<int>(std::nearbyint(s));
  const double theta = (3.14159265358979323846 / 2.0) * (s - static_cast<double>(q));
  const double c = std::cos(theta);
  const double si = std::sin(theta);
  // e^{-2 pi i rr} = e^{-i pi q / 2} * (c - i si)
  switch ((q % 4 + 4) % 4) {
    case 0: return {c, -si};
    case 1: return {-si, -c};   // times -i
    case 2: return {-c, si};    // times -1
    default: return {si, c};    // times +i
  }
}

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

std::size_t pow_size(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::size_t{1} << 62) / base) {
      throw std::overflow_error("grid size overflow");
    }
    r *= base;
  }
  return r;
}

void for_each_index(int n, std::size_t extent,
                    const std::function<void(std::size_t, std::span<const std::size_t>)>& fn) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  const std::size_t total = pow_size(extent, n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, idx);
    for (int d = n - 1; d >= 0; --d) {
      if (++idx[static_cast<std::size_t>(d)] < extent) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
  }
}

void unflatten(std::size_t flat, int n, std::size_t extent, std::size_t* out) {
  for (int d = n - 1; d >= 0; --d) {
    out[d] = flat % extent;
    flat /= extent;
  }
}

void CompensatedSum::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

namespace {

// Pairwise combine of per-block partials, in index order.
double combine_pairwise(std::vector<double>& parts) {
  if (parts.empty()) return 0.0;
  std::size_t n = parts.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) parts[i] += parts[i + half];
    n = half;
  }
  return parts[0];
}

}  // namespace

double reduce_sum(std::span<const double> xs) {
  const std::size_t blocks = (xs.size() + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> parts(blocks == 0 ? 1 : blocks, 0.0);
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kReduceBlock;
    const std::size_t hi = std::min(xs.size(), lo + kReduceBlock);
    CompensatedSum acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(xs[i]);
    parts[b] = acc.value();
  });
  return combine_pairwise(parts);
}

double reduce_sum_abs2(std::span<const cplx> xs) {
  const std::size_t blocks = (xs.size() + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> parts(blocks == 0 ? 1 : blocks, 0.0);
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kReduceBlock;
    const std::size_t hi = std::min(xs.size(), lo + kReduceBlock);
    CompensatedSum acc;
    for (std::size_t i = lo; i < hi; ++i) {
      const double re = xs[i].real(), im = xs[i].imag();
      acc.add(re * re + im * im);
    }
    parts[b] = acc.value();
  });
  return combine_pairwise(parts);
}

cplx reduce_dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  const std::size_t blocks = (a.size() + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> pre(blocks == 0 ? 1 : blocks, 0.0);
  std::vector<double> pim(blocks == 0 ? 1 : blocks, 0.0);
  parallel_blocks(blocks, [&](std::size_t blk) {
    const std::size_t lo = blk * kReduceBlock;
    const std::size_t hi = std::min(a.size(), lo + kReduceBlock);
    CompensatedSum sre, sim;
    for (std::size_t i = lo; i < hi; ++i) {
      const double ar = a[i].real(), ai = a[i].imag();
      const double br = b[i].real(), bi = b[i].imag();
      sre.add(ar * br + ai * bi);
      sim.add(ai * br - ar * bi);
    }
    pre[blk] = sre.value();
    pim[blk] = sim.value();
  });
  return {combine_pairwise(pre), combine_pairwise(pim)};
}

int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("ZAKHRT_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& fn) {
  if (blocks == 0) return;
  const int workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= blocks) return;
        fn(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0 || chunk == 0) return;
  const std::size_t blocks = (count + chunk - 1) / chunk;
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t lo = b * chunk;
    fn(lo, std::min(count, lo + chunk));
  });
}

}  // namespace zakhrt
