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

#include "zakhrt/zak.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "zakhrt/fft.hpp"
#include "zakhrt/kernels.hpp"

namespace zakhrt {

void ZakGridSpec::validate() const {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (!is_power_of_two(M) || M < 2) throw std::invalid_argument("resolution must be a power of two");
  if (T < 1) throw std::invalid_argument("window must be positive");
}

std::size_t ZakGridSpec::grid_size() const { return pow_size(static_cast<std::size_t>(M), 2 * n); }

std::size_t ZakGrid::flat(std::span<const std::size_t> i, std::span<const std::size_t> k) const {
  std::size_t f = 0;
  for (std::size_t d = 0; d < i.size(); ++d) f = f * spec.axis_size() + i[d];
  for (std::size_t d = 0; d < k.size(); ++d) f = f * spec.axis_size() + k[d];
  return f;
}

void TrigPoly::validate() const {
  if (terms.empty()) throw std::invalid_argument("trig poly needs at least one term");
  const std::size_t n = terms[0].l.size();
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (const auto& term : terms) {
    if (term.l.size() != n || term.m.size() != n) {
      throw std::invalid_argument("trig poly: inconsistent term dimensions");
    }
    if (term.c == cplx(0.0, 0.0)) throw std::invalid_argument("trig poly: zero coefficient");
    if (!seen.insert({term.l, term.m}).second) {
      throw std::invalid_argument("trig poly: duplicate frequency pair");
    }
  }
}

double TrigPoly::coeff_abs_sum() const {
  double s = 0.0;
  for (const auto& term : terms) s += std::abs(term.c);
  return s;
}

cplx eval_trig_poly(const TrigPoly& P, std::span<const double> z) {
  const std::size_t n = z.size() / 2;
  cplx acc{0.0, 0.0};
  for (const auto& term : P.terms) {
    double r = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      r += z[d] * term.l[d] + z[n + d] * term.m[d];
    }
    acc += term.c * unit_phase(r);
  }
  return acc;
}

namespace {

// Core truncated sum over tau in [-T,T]^n, row-major tau order, Neumaier
// accumulation per component.
template <typename Eval>
cplx zak_sum(int n, int T, std::span<const double> t, std::span<const double> w,
             const Eval& fval) {
  const std::size_t width = static_cast<std::size_t>(2 * T + 1);
  const std::size_t total = pow_size(width, n);
  std::vector<double> shifted(static_cast<std::size_t>(n));
  std::vector<std::size_t> digits(static_cast<std::size_t>(n));
  CompensatedSum re, im;
  for (std::size_t flat = 0; flat < total; ++flat) {
    unflatten(flat, n, width, digits.data());
    double dot = 0.0;
    for (int d = 0; d < n; ++d) {
      const double tau = static_cast<double>(static_cast<long>(digits[static_cast<std::size_t>(d)]) - T);
      shifted[static_cast<std::size_t>(d)] = t[static_cast<std::size_t>(d)] + tau;
      dot += w[static_cast<std::size_t>(d)] * tau;
    }
    const cplx term = fval(shifted) * unit_phase(dot);
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

using NodeEval = std::function<cplx(std::span<const double> t, std::span<const double> w)>;

ZakGrid make_grid(const ZakGridSpec& spec, double trunc_bound, const NodeEval& eval) {
  spec.validate();
  ZakGrid grid;
  grid.spec = spec;
  grid.trunc_bound = trunc_bound;
  const std::size_t total = spec.grid_size();
  grid.values.resize(total);
  const int n = spec.n;
  const std::size_t M = spec.axis_size();
  parallel_chunks(total, 2048, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> digits(static_cast<std::size_t>(2 * n));
    std::vector<double> t(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (std::size_t flat = lo; flat < hi; ++flat) {
      unflatten(flat, 2 * n, M, digits.data());
      for (int d = 0; d < n; ++d) {
        t[static_cast<std::size_t>(d)] = static_cast<double>(digits[static_cast<std::size_t>(d)]) / spec.M;
        w[static_cast<std::size_t>(d)] = static_cast<double>(digits[static_cast<std::size_t>(d + n)]) / spec.M;
      }
      grid.values[flat] = eval(t, w);
    }
  });
  return grid;
}

}  // namespace

cplx zak_point(const AnalyticFunction& f, std::span<const double> t, std::span<const double> w,
               int T) {
  return zak_sum(f.dimension(), T, t, w,
                 [&](std::span<const double> arg) { return cplx(f.evaluate(arg), 0.0); });
}

cplx zak_point(const ShiftedFunction& f, std::span<const double> t, std::span<const double> w,
               int T) {
  return zak_sum(f.base().dimension(), T, t, w,
                 [&](std::span<const double> arg) { return f.evaluate(arg); });
}

double zak_point_modulus(const AnalyticFunction& f, std::span<const double> z, int T) {
  const int n = f.dimension();
  std::vector<double> t(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    t[static_cast<std::size_t>(d)] = frac_unit(z[static_cast<std::size_t>(d)]);
    w[static_cast<std::size_t>(d)] = frac_unit(z[static_cast<std::size_t>(d + n)]);
  }
  const cplx v = zak_point(f, t, w, T);
  // same expression as kernels cabs, so grid and point moduli agree bitwise
  return std::sqrt(v.real() * v.real() + v.imag() * v.imag());
}

ZakGrid zak_direct(const AnalyticFunction& f, const ZakGridSpec& spec) {
  if (f.dimension() != spec.n) throw std::invalid_argument("dimension mismatch");
  return make_grid(spec, f.tail_bound(spec.T),
                   [&](std::span<const double> t, std::span<const double> w) {
                     return zak_point(f, t, w, spec.T);
                   });
}

ZakGrid zak_fft(const SampledGrid& samples, const ZakGridSpec& spec) {
  spec.validate();
  if (samples.n != spec.n || samples.M != spec.M || samples.T != spec.T) {
    throw std::invalid_argument("sample grid does not match Zak spec (window/resolution mismatch)");
  }
  const int n = spec.n;
  const std::size_t M = spec.axis_size();
  const std::size_t rows = pow_size(M, n);       // i-multiindices
  const std::size_t cols = pow_size(M, n);       // k-multiindices
  const std::size_t width = static_cast<std::size_t>(2 * spec.T + 1);
  const std::size_t taus = pow_size(width, n);
  const std::size_t axis = samples.axis_count();

  ZakGrid grid;
  grid.spec = spec;
  grid.trunc_bound = samples.tail_bound;
  grid.values.resize(rows * cols);

  parallel_chunks(rows, 8, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idig(static_cast<std::size_t>(n));
    std::vector<std::size_t> tdig(static_cast<std::size_t>(n));
    std::vector<cplx> folded(cols);
    for (std::size_t row = lo; row < hi; ++row) {
      unflatten(row, n, M, idig.data());
      std::fill(folded.begin(), folded.end(), cplx{0.0, 0.0});
      // fold tau into residues mod M
      for (std::size_t tf = 0; tf < taus; ++tf) {
        unflatten(tf, n, width, tdig.data());
        std::size_t bucket = 0;
        std::size_t sample_flat = 0;
        for (int d = 0; d < n; ++d) {
          const long tau = static_cast<long>(tdig[static_cast<std::size_t>(d)]) - spec.T;
          const long res = ((tau % spec.M) + spec.M) % spec.M;
          bucket = bucket * M + static_cast<std::size_t>(res);
          const std::size_t si =
              idig[static_cast<std::size_t>(d)] + static_cast<std::size_t>((tau + spec.T) * spec.M);
          sample_flat = sample_flat * axis + si;
        }
        folded[bucket] += samples.values[sample_flat];
      }
      for (int ax = 0; ax < n; ++ax) fft_axis(folded, n, M, ax);
      std::copy(folded.begin(), folded.end(), grid.values.begin() + static_cast<std::ptrdiff_t>(row * cols));
    }
  });
  return grid;
}

std::vector<double> modulus_grid(const ZakGrid& grid) {
  std::vector<double> out(grid.values.size());
  kernels::active().cabs(grid.values.data(), out.data(), out.size());
  return out;
}

QuasiPeriodicityReport check_quasi_periodicity(const AnalyticFunction& f,
                                               const ZakGridSpec& spec) {
  const ZakGrid grid = zak_direct(f, spec);
  const int n = spec.n;
  const std::size_t M = spec.axis_size();
  const std::size_t total = grid.values.size();
  const std::size_t blocks = (total + 2047) / 2048;
  std::vector<double> w_parts(blocks, 0.0), t_parts(blocks, 0.0);
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t lo = b * 2048, hi = std::min(total, lo + 2048);
    std::vector<std::size_t> digits(static_cast<std::size_t>(2 * n));
    std::vector<double> t(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    std::vector<double> ts(static_cast<std::size_t>(n)), ws(static_cast<std::size_t>(n));
    double wmax = 0.0, tmax = 0.0;
    for (std::size_t flat = lo; flat < hi; ++flat) {
      unflatten(flat, 2 * n, M, digits.data());
      for (int d = 0; d < n; ++d) {
        t[static_cast<std::size_t>(d)] = static_cast<double>(digits[static_cast<std::size_t>(d)]) / spec.M;
        w[static_cast<std::size_t>(d)] = static_cast<double>(digits[static_cast<std::size_t>(d + n)]) / spec.M;
      }
      const cplx base = grid.values[flat];
      for (int j = 0; j < n; ++j) {
        ts.assign(t.begin(), t.end());
        ws.assign(w.begin(), w.end());
        ws[static_cast<std::size_t>(j)] += 1.0;
        wmax = std::max(wmax, std::abs(zak_point(f, ts, ws, spec.T) - base));
        ws[static_cast<std::size_t>(j)] -= 1.0;
        ts[static_cast<std::size_t>(j)] += 1.0;
        const cplx expected = unit_phase(-w[static_cast<std::size_t>(j)]) * base;
        tmax = std::max(tmax, std::abs(zak_point(f, ts, ws, spec.T) - expected));
        ts[static_cast<std::size_t>(j)] -= 1.0;
      }
    }
    w_parts[b] = wmax;
    t_parts[b] = tmax;
  });
  QuasiPeriodicityReport rep;
  rep.omega_residual = kernels::active().vmax(w_parts.data(), w_parts.size());
  rep.t_residual = kernels::active().vmax(t_parts.data(), t_parts.size());
  return rep;
}

double check_unitarity(const ZakGrid& grid, const AnalyticFunction& f) {
  const double cell = 1.0 / static_cast<double>(grid.spec.grid_size());
  const double norm = std::sqrt(reduce_sum_abs2(grid.values) * cell);
  const double exact = f.norm_l2();
  return std::abs(norm - exact) / exact;
}

namespace {

ZakGrid trig_poly_grid(const TrigPoly& P, const ZakGridSpec& spec) {
  return make_grid(spec, 0.0, [&](std::span<const double> t, std::span<const double> w) {
    std::vector<double> z(t.begin(), t.end());
    z.insert(z.end(), w.begin(), w.end());
    return eval_trig_poly(P, z);
  });
}

}  // namespace

CombinationResult lattice_combination_zak(const AnalyticFunction& f, const TrigPoly& P,
                                          const ZakGridSpec& spec) {
  P.validate();
  if (P.dimension() != spec.n) throw std::invalid_argument("trig poly dimension mismatch");
  const int n = spec.n;

  // left side: direct summation of g = sum_j c_j pi(l_j, m_j) f
  std::vector<ShiftedFunction> shifts;
  shifts.reserve(P.size());
  for (const auto& term : P.terms) {
    TFPoint p;
    p.x.assign(term.m.begin(), term.m.end());
    p.y.assign(term.l.begin(), term.l.end());
    shifts.emplace_back(f, p);
  }
  CombinationResult out;
  out.combination = make_grid(spec, f.tail_bound(spec.T) * P.coeff_abs_sum(),
                              [&](std::span<const double> t, std::span<const double> w) {
                                return zak_sum(n, spec.T, t, w, [&](std::span<const double> arg) {
                                  cplx v{0.0, 0.0};
                                  for (std::size_t j = 0; j < shifts.size(); ++j) {
                                    v += P.terms[j].c * shifts[j].evaluate(arg);
                                  }
                                  return v;
                                });
                              });

  // right side: P(z) * Zf(z)
  const ZakGrid zf = zak_direct(f, spec);
  const ZakGrid pg = trig_poly_grid(P, spec);
  out.product.spec = spec;
  out.product.trunc_bound = zf.trunc_bound * P.coeff_abs_sum();
  out.product.values.resize(zf.values.size());
  kernels::active().cmul(pg.values.data(), zf.values.data(), out.product.values.data(),
                         zf.values.size());

  out.residual = kernels::active().max_cabs_diff(out.combination.values.data(),
                                                 out.product.values.data(), zf.values.size());
  return out;
}

ShiftedZakResult shifted_zak(const AnalyticFunction& f, const TFPoint& p,
                             const ZakGridSpec& spec) {
  p.validate();
  if (p.dimension() != spec.n) throw std::invalid_argument("TF point dimension mismatch");
  const int n = spec.n;
  ShiftedZakResult out;

  const ShiftedFunction pf(f, p);
  out.shifted = make_grid(spec, f.tail_bound(spec.T),
                          [&](std::span<const double> t, std::span<const double> w) {
                            return zak_point(pf, t, w, spec.T);
                          });

  out.reference = make_grid(spec, f.tail_bound(spec.T),
                            [&](std::span<const double> t, std::span<const double> w) {
                              std::vector<double> ts(t.begin(), t.end());
                              std::vector<double> ws(w.begin(), w.end());
                              double dot = 0.0;
                              for (int d = 0; d < n; ++d) {
                                ts[static_cast<std::size_t>(d)] -= p.x[static_cast<std::size_t>(d)];
                                ws[static_cast<std::size_t>(d)] += p.y[static_cast<std::size_t>(d)];
                                dot += t[static_cast<std::size_t>(d)] * p.y[static_cast<std::size_t>(d)];
                              }
                              return unit_phase(dot) * zak_point(f, ts, ws, spec.T);
                            });

  out.residual = kernels::active().max_cabs_diff(out.shifted.values.data(),
                                                 out.reference.values.data(),
                                                 out.shifted.values.size());
  return out;
}

double functional_equation_residual(const AnalyticFunction& f, const TrigPoly& P,
                                    const TFPoint& p, const ZakGridSpec& spec) {
  P.validate();
  p.validate();
  spec.validate();
  if (P.dimension() != spec.n || p.dimension() != spec.n || f.dimension() != spec.n) {
    throw std::invalid_argument("dimension mismatch");
  }
  const int n = spec.n;

  const ZakGrid zf = zak_direct(f, spec);
  const std::vector<double> abs_f = modulus_grid(zf);
  const ZakGrid pg = trig_poly_grid(P, spec);
  const std::vector<double> abs_p = modulus_grid(pg);

  std::vector<double> lhs(abs_f.size());
  kernels::active().vmul(abs_p.data(), abs_f.data(), lhs.data(), lhs.size());

  // |F(z + gamma)|, gamma = (-x, y), by fresh reduced direct sums
  std::vector<double> rhs(abs_f.size());
  const std::size_t M = spec.axis_size();
  parallel_chunks(rhs.size(), 2048, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> digits(static_cast<std::size_t>(2 * n));
    std::vector<double> z(static_cast<std::size_t>(2 * n));
    for (std::size_t flat = lo; flat < hi; ++flat) {
      unflatten(flat, 2 * n, M, digits.data());
      for (int d = 0; d < n; ++d) {
        z[static_cast<std::size_t>(d)] =
            static_cast<double>(digits[static_cast<std::size_t>(d)]) / spec.M - p.x[static_cast<std::size_t>(d)];
        z[static_cast<std::size_t>(d + n)] =
            static_cast<double>(digits[static_cast<std::size_t>(d + n)]) / spec.M + p.y[static_cast<std::size_t>(d)];
      }
      rhs[flat] = zak_point_modulus(f, z, spec.T);
    }
  });

  return kernels::active().max_abs_diff(lhs.data(), rhs.data(), lhs.size());
}

// ---- randomized sweeps ----

namespace {
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

TrigPoly draw_trig_poly(std::mt19937_64& rng, int n, int max_terms, int max_frequency) {
  const int count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
  TrigPoly P;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  while (static_cast<int>(P.terms.size()) < count) {
    TrigTerm term;
    term.l.resize(static_cast<std::size_t>(n));
    term.m.resize(static_cast<std::size_t>(n));
    const int span = 2 * max_frequency + 1;
    for (int d = 0; d < n; ++d) {
      term.l[static_cast<std::size_t>(d)] = static_cast<int>(rng() % static_cast<std::uint64_t>(span)) - max_frequency;
      term.m[static_cast<std::size_t>(d)] = static_cast<int>(rng() % static_cast<std::uint64_t>(span)) - max_frequency;
    }
    if (!seen.insert({term.l, term.m}).second) continue;
    // coefficient in the unit disk, bounded away from the forbidden zero
    for (;;) {
      const double re = 2.0 * uniform01(rng) - 1.0;
      const double im = 2.0 * uniform01(rng) - 1.0;
      const double r2 = re * re + im * im;
      if (r2 <= 1.0 && r2 >= 0.0025) {
        term.c = {re, im};
        break;
      }
    }
    P.terms.push_back(std::move(term));
  }
  return P;
}

TFPoint draw_tf_point(std::mt19937_64& rng, int n, double range) {
  TFPoint p;
  p.x.resize(static_cast<std::size_t>(n));
  p.y.resize(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    p.x[static_cast<std::size_t>(d)] = range * (2.0 * uniform01(rng) - 1.0);
    p.y[static_cast<std::size_t>(d)] = range * (2.0 * uniform01(rng) - 1.0);
  }
  return p;
}

std::vector<double> identity1_sweep(const AnalyticFunction& f, const ZakGridSpec& spec,
                                    const SweepConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(cfg.draws));
  for (int d = 0; d < cfg.draws; ++d) {
    const TrigPoly P = draw_trig_poly(rng, spec.n, cfg.max_terms, cfg.max_frequency);
    residuals.push_back(lattice_combination_zak(f, P, spec).residual);
  }
  return residuals;
}

std::vector<double> identity2_sweep(const AnalyticFunction& f, const ZakGridSpec& spec,
                                    const SweepConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(cfg.draws));
  for (int d = 0; d < cfg.draws; ++d) {
    const TFPoint p = draw_tf_point(rng, spec.n, cfg.shift_range);
    residuals.push_back(shifted_zak(f, p, spec).residual);
  }
  return residuals;
}

std::vector<double> functional_equation_sweep(const AnalyticFunction& f,
                                              const ZakGridSpec& spec,
                                              const SweepConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(cfg.draws));
  for (int d = 0; d < cfg.draws; ++d) {
    const TrigPoly P = draw_trig_poly(rng, spec.n, cfg.max_terms, cfg.max_frequency);
    const TFPoint p = draw_tf_point(rng, spec.n, cfg.shift_range);
    residuals.push_back(functional_equation_residual(f, P, p, spec));
  }
  return residuals;
}

}  // namespace zakhrt
