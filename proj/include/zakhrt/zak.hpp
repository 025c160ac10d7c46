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

#ifndef ZAKHRT_ZAK_HPP_
#define ZAKHRT_ZAK_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "zakhrt/functions.hpp"
#include "zakhrt/util.hpp"

namespace zakhrt {

// Sign conventions, fixed throughout and deliberately non-negotiable:
//   modulation        pi(0,y) f(t) = e^{-2 pi i <y,t>} f(t)      (minus sign)
//   Zak kernel        Zf(t,w) = sum_tau f(t+tau) e^{-2 pi i <w,tau>}
//   trig polynomial   P(t,w)  = sum_j c_j e^{-2 pi i <t,l_j>} e^{-2 pi i <w,m_j>}
//   torus shift       gamma = (-x, y) mod Z^{2n}
// Most of the literature uses e^{+2 pi i <y,t>} modulation; see the
// convention table in README.md before comparing values elsewhere.

struct ZakGridSpec {
  int n = 1;   // dimension
  int M = 64;  // grid resolution per torus coordinate, power of two
  int T = 10;  // truncation window: tau in [-T, T]^n

  void validate() const;
  std::size_t axis_size() const { return static_cast<std::size_t>(M); }
  std::size_t grid_size() const;  // M^{2n}
};

// Zf on the uniform grid (i/M, k/M), i,k in {0..M-1}^n, stored row-major
// over the 2n indices (i..., k...).
struct ZakGrid {
  ZakGridSpec spec;
  std::vector<cplx> values;
  double trunc_bound = 0.0;

  std::size_t flat(std::span<const std::size_t> i, std::span<const std::size_t> k) const;
  cplx at(std::span<const std::size_t> i, std::span<const std::size_t> k) const {
    return values[flat(i, k)];
  }
};

struct TrigTerm {
  cplx c;
  std::vector<int> l;  // modulation frequency (pairs with t)
  std::vector<int> m;  // translation (pairs with omega)
};

// P(t,w) = sum_j c_j e^{-2 pi i <t,l_j>} e^{-2 pi i <w,m_j>}; c_j != 0 and
// (l_j, m_j) pairwise distinct.
struct TrigPoly {
  std::vector<TrigTerm> terms;

  int dimension() const { return terms.empty() ? 0 : static_cast<int>(terms[0].l.size()); }
  std::size_t size() const { return terms.size(); }
  void validate() const;
  double coeff_abs_sum() const;
};

cplx eval_trig_poly(const TrigPoly& P, std::span<const double> z);  // z = (t..., w...)

// ---- point evaluators ----

// Truncated defining sum at arbitrary real arguments (no reduction):
// sum over tau in [-T,T]^n of f(t+tau) e^{-2 pi i <w,tau>}, compensated,
// tau in row-major order.
cplx zak_point(const AnalyticFunction& f, std::span<const double> t,
               std::span<const double> w, int T);
cplx zak_point(const ShiftedFunction& f, std::span<const double> t,
               std::span<const double> w, int T);

// |Zf| at a torus point; the argument is reduced to [0,1)^{2n} first
// (exact for dyadic inputs), valid because |Zf| is Z^{2n}-periodic.
double zak_point_modulus(const AnalyticFunction& f, std::span<const double> z, int T);

// ---- grid operations ----

ZakGrid zak_direct(const AnalyticFunction& f, const ZakGridSpec& spec);

// Same sum computed by folding tau into residues mod M and running a
// length-M DFT per omega axis. Agrees with zak_direct to ~1e-15 relative.
ZakGrid zak_fft(const SampledGrid& samples, const ZakGridSpec& spec);

// Modulus grid |F| (kernel-dispatched).
std::vector<double> modulus_grid(const ZakGrid& grid);

struct QuasiPeriodicityReport {
  double omega_residual = 0.0;  // sup |Zf(t, w+e_j) - Zf(t,w)|
  double t_residual = 0.0;      // sup |Zf(t+e_j, w) - e^{2 pi i w_j} Zf(t,w)|
};

// Shifted values are recomputed by independent direct sums, never read
// from the grid.
QuasiPeriodicityReport check_quasi_periodicity(const AnalyticFunction& f,
                                               const ZakGridSpec& spec);

// | sqrt(M^{-2n} sum |F|^2) - ||f|| | / ||f||
double check_unitarity(const ZakGrid& grid, const AnalyticFunction& f);

// Identity I: Z[sum_j c_j pi(l_j, m_j) f] = P * Zf, both sides by
// independent code paths.
struct CombinationResult {
  ZakGrid combination;  // direct summation of the shifted combination
  ZakGrid product;      // P(z) * Zf(z)
  double residual = 0.0;
};
CombinationResult lattice_combination_zak(const AnalyticFunction& f, const TrigPoly& P,
                                          const ZakGridSpec& spec);

// Identity II: Z[pi(x,y) f](z) = e^{-2 pi i <t,y>} Zf(t-x, w+y); the right
// side is evaluated by fresh direct sums at the shifted (off-grid) points.
struct ShiftedZakResult {
  ZakGrid shifted;    // Z[pi(x,y) f]
  ZakGrid reference;  // e^{-2 pi i <t,y>} Zf(t-x, w+y)
  double residual = 0.0;
};
ShiftedZakResult shifted_zak(const AnalyticFunction& f, const TFPoint& p,
                             const ZakGridSpec& spec);

// sup over grid nodes z of | |P(z)| |F(z)| - |F(z+gamma)| |, gamma = (-x, y).
// Near-zero values are a necessary condition for the dependence relation.
double functional_equation_residual(const AnalyticFunction& f, const TrigPoly& P,
                                    const TFPoint& p, const ZakGridSpec& spec);

// ---- randomized residual sweeps (shared by the CLI and acceptance) ----

struct SweepConfig {
  int draws = 100;
  std::uint64_t seed = 1;
  int max_terms = 5;       // identity-I polynomial size
  int max_frequency = 5;   // |l|, |m| bound
  double shift_range = 2.0;  // identity-II shifts in [-range, range]
};

TrigPoly draw_trig_poly(std::mt19937_64& rng, int n, int max_terms, int max_frequency);
TFPoint draw_tf_point(std::mt19937_64& rng, int n, double range);

// Returns per-draw sup residuals (size = draws).
std::vector<double> identity1_sweep(const AnalyticFunction& f, const ZakGridSpec& spec,
                                    const SweepConfig& cfg);
std::vector<double> identity2_sweep(const AnalyticFunction& f, const ZakGridSpec& spec,
                                    const SweepConfig& cfg);
std::vector<double> functional_equation_sweep(const AnalyticFunction& f,
                                              const ZakGridSpec& spec,
                                              const SweepConfig& cfg);

}  // namespace zakhrt

#endif  // ZAKHRT_ZAK_HPP_
