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

#include "zakhrt/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zakhrt/kernels.hpp"

namespace zakhrt {

namespace {

// torus distance per coordinate, sup over coordinates
double torus_sup_dist(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::fabs(a[i] - b[i]);
    d = std::min(d, 1.0 - d);
    worst = std::max(worst, d);
  }
  return worst;
}

// A refined zero is isolated when |F| clears the noise floor on the whole
// 3^d - 1 stencil one radius out. Zero curves/sheets keep a vanishing
// direction and fail here, which the report counts as a refinement
// failure rather than a certified zero.
bool is_isolated(const AnalyticFunction& f, std::span<const double> center, double radius,
                 int T, double floor) {
  const int d = static_cast<int>(center.size());
  std::vector<long> off(static_cast<std::size_t>(d), -1L);
  std::vector<double> probe(static_cast<std::size_t>(d));
  for (;;) {
    bool origin = true;
    for (long o : off) origin = origin && o == 0;
    if (!origin) {
      for (int i = 0; i < d; ++i) {
        probe[static_cast<std::size_t>(i)] =
            frac_unit(center[static_cast<std::size_t>(i)] +
                      static_cast<double>(off[static_cast<std::size_t>(i)]) * radius);
      }
      if (zak_point_modulus(f, probe, T) <= floor) return false;
    }
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++off[static_cast<std::size_t>(i)] <= 1) break;
      off[static_cast<std::size_t>(i)] = -1;
    }
    if (i < 0) return true;
  }
}

}  // namespace

std::vector<ZeroCandidate> scan_zeros(const ZakGrid& grid, double threshold) {
  if (!(threshold > grid.trunc_bound)) {
    throw std::invalid_argument("scan threshold must exceed the truncation error bound");
  }
  const int d = 2 * grid.spec.n;
  const std::size_t M = grid.spec.axis_size();
  const std::vector<double> mod = modulus_grid(grid);

  // neighbour offsets: {-1,0,1}^d minus the origin
  std::vector<std::vector<long>> offsets;
  {
    std::vector<long> off(static_cast<std::size_t>(d), -1);
    for (;;) {
      bool all_zero = true;
      for (long v : off) all_zero = all_zero && v == 0;
      if (!all_zero) offsets.push_back(off);
      int i = d - 1;
      for (; i >= 0; --i) {
        if (++off[static_cast<std::size_t>(i)] <= 1) break;
        off[static_cast<std::size_t>(i)] = -1;
      }
      if (i < 0) break;
    }
  }

  std::vector<ZeroCandidate> out;
  std::vector<std::size_t> digits(static_cast<std::size_t>(d));
  std::vector<std::size_t> nb(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < mod.size(); ++flat) {
    const double v = mod[flat];
    if (!(v < threshold)) continue;
    unflatten(flat, d, M, digits.data());
    bool is_min = true;
    for (const auto& off : offsets) {
      std::size_t nflat = 0;
      for (int i = 0; i < d; ++i) {
        const long w = (static_cast<long>(digits[static_cast<std::size_t>(i)]) +
                        off[static_cast<std::size_t>(i)] + static_cast<long>(M)) %
                       static_cast<long>(M);
        nb[static_cast<std::size_t>(i)] = static_cast<std::size_t>(w);
        nflat = nflat * M + static_cast<std::size_t>(w);
      }
      if (mod[nflat] < v) {
        is_min = false;
        break;
      }
    }
    if (!is_min) continue;
    ZeroCandidate cand;
    cand.node.assign(digits.begin(), digits.end());
    cand.location.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      cand.location[static_cast<std::size_t>(i)] =
          static_cast<double>(digits[static_cast<std::size_t>(i)]) / grid.spec.M;
    }
    cand.value = v;
    out.push_back(std::move(cand));
  }
  return out;
}

RefineOutcome refine_zero(const AnalyticFunction& f, std::span<const double> start,
                          double start_radius, double target_radius, int T,
                          double noise_floor) {
  if (!(start_radius > 0.0) || !(target_radius > 0.0) || target_radius > start_radius) {
    throw std::invalid_argument("refine radii must satisfy 0 < target <= start");
  }
  const int d = static_cast<int>(start.size());
  RefineOutcome out;
  std::vector<double> center(start.begin(), start.end());
  double best = zak_point_modulus(f, center, T);
  double radius = start_radius;
  // three extra halvings past the target keep the final residual well
  // under slope * target_radius
  const double stop_radius = target_radius / 8.0;
  int stalls = 0;

  std::vector<long> off(static_cast<std::size_t>(d));
  std::vector<double> probe(static_cast<std::size_t>(d));
  while (radius > stop_radius) {
    // 3^d stencil, row-major over {-1,0,1}^d; first strict improvement wins
    std::fill(off.begin(), off.end(), -1L);
    std::vector<double> best_probe = center;
    double round_best = best;
    for (;;) {
      for (int i = 0; i < d; ++i) {
        probe[static_cast<std::size_t>(i)] =
            frac_unit(center[static_cast<std::size_t>(i)] +
                      static_cast<double>(off[static_cast<std::size_t>(i)]) * radius);
      }
      const double v = zak_point_modulus(f, probe, T);
      if (v < round_best) {
        round_best = v;
        best_probe = probe;
      }
      int i = d - 1;
      for (; i >= 0; --i) {
        if (++off[static_cast<std::size_t>(i)] <= 1) break;
        off[static_cast<std::size_t>(i)] = -1;
      }
      if (i < 0) break;
    }
    // centre is in the stencil, so round_best <= best always
    if (round_best > noise_floor && round_best > 0.95 * best) {
      ++stalls;
    } else {
      stalls = 0;
    }
    best = round_best;
    center = best_probe;
    radius *= 0.5;
    ++out.rounds;
    if (stalls >= 6) {
      out.converged = false;
      out.zero.location = center;
      out.zero.residual = best;
      out.zero.radius = radius;
      return out;
    }
  }
  out.converged = true;
  out.zero.location = center;
  out.zero.residual = best;
  out.zero.radius = radius;
  return out;
}

ZeroSetReport certify_finite_zero_set(const AnalyticFunction& f, const ZakGridSpec& spec,
                                      const ZeroCertifyOptions& opts) {
  spec.validate();
  const ZakGrid grid = zak_direct(f, spec);
  ZeroSetReport report;
  report.grid = spec;
  report.accept_threshold = std::max(10.0 * grid.trunc_bound, 1e-8);

  const std::vector<ZeroCandidate> candidates = scan_zeros(grid, opts.scan_threshold);
  const double start_radius = 1.5 / static_cast<double>(spec.M);
  const double merge_radius = 2.0 / static_cast<double>(spec.M);
  if (candidates.size() > opts.max_candidates) {
    report.candidate_overflow = true;
    report.claims_finite = false;
    const std::vector<double> all = modulus_grid(grid);
    double lo = all.empty() ? 0.0 : all[0];
    for (double v : all) lo = std::min(lo, v);
    report.off_zero_lower_bound = lo;
    return report;
  }

  for (const auto& cand : candidates) {
    const RefineOutcome ref = refine_zero(f, cand.location, start_radius, opts.target_radius,
                                          spec.T, report.accept_threshold);
    if (!ref.converged ||
        !is_isolated(f, ref.zero.location, merge_radius, spec.T, report.accept_threshold)) {
      ++report.refinement_failures;
      continue;
    }
    bool merged = false;
    for (auto& existing : report.zeros) {
      if (torus_sup_dist(existing.location, ref.zero.location) <= merge_radius) {
        if (ref.zero.residual < existing.residual) existing = ref.zero;
        merged = true;
        break;
      }
    }
    if (!merged) report.zeros.push_back(ref.zero);
  }

  // exhaustive grid minimum outside the exclusion balls
  const std::vector<double> mod = modulus_grid(grid);
  const int d = 2 * spec.n;
  const std::size_t M = spec.axis_size();
  double lower = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> digits(static_cast<std::size_t>(d));
  std::vector<double> loc(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < mod.size(); ++flat) {
    unflatten(flat, d, M, digits.data());
    for (int i = 0; i < d; ++i) {
      loc[static_cast<std::size_t>(i)] =
          static_cast<double>(digits[static_cast<std::size_t>(i)]) / spec.M;
    }
    bool excluded = false;
    for (const auto& z : report.zeros) {
      if (torus_sup_dist(z.location, loc) <= opts.exclusion_radius) {
        excluded = true;
        break;
      }
    }
    if (!excluded) lower = std::min(lower, mod[flat]);
  }
  report.off_zero_lower_bound = std::isfinite(lower) ? lower : 0.0;

  bool residuals_ok = true;
  for (const auto& z : report.zeros) {
    residuals_ok = residuals_ok && z.residual <= report.accept_threshold;
  }
  report.claims_finite = report.refinement_failures == 0 && residuals_ok &&
                         report.off_zero_lower_bound > report.accept_threshold;
  return report;
}

ZeroInvarianceReport check_zero_invariance(const ZeroSetReport& report,
                                           const TorusVector& gamma,
                                           const AnalyticFunction& f, double tol,
                                           std::uint64_t m_max) {
  if (report.zeros.empty()) {
    throw std::invalid_argument("invariance check needs a nonempty zero set");
  }
  ZeroInvarianceReport out;
  out.m_max = m_max;
  if (tol <= 0.0) {
    double worst = 0.0;
    for (const auto& z : report.zeros) worst = std::max(worst, z.residual);
    tol = std::max({1e-6, 2.0 * worst, report.accept_threshold});
  }
  out.tol = tol;
  out.holds = true;
  for (const auto& z : report.zeros) {
    ZeroInvarianceEntry entry;
    entry.zero = z.location;
    entry.holds = true;
    const TorusVector lambda(z.location);
    for (std::uint64_t m = 1; m <= m_max; ++m) {
      const TorusVector zm = advance(lambda, gamma, m);
      const double v = zak_point_modulus(f, zm.coords(), report.grid.T);
      if (v > tol) {
        entry.holds = false;
        entry.witness.zero = z.location;
        entry.witness.m = m;
        entry.witness.point.assign(zm.coords().begin(), zm.coords().end());
        entry.witness.value = v;
        out.holds = false;
        break;
      }
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace zakhrt
