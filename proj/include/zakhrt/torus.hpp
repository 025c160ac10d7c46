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

#ifndef ZAKHRT_TORUS_HPP_
#define ZAKHRT_TORUS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "zakhrt/zak.hpp"

namespace zakhrt {

// Exact rational p/q, q > 0, reduced. Carried alongside torus coordinates
// because the rational/irrational dichotomy cannot be decided in floating
// point.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  static Rational reduced(std::int64_t p, std::int64_t q);
  Rational mod1() const;  // representative with 0 <= p < q
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

// A point of the torus [0,1)^{2n} (or any [0,1)^d). Coordinates are stored
// reduced; optional exact rational tags enable the exact orbit arithmetic.
class TorusVector {
 public:
  TorusVector() = default;
  explicit TorusVector(std::span<const double> raw);               // reduces mod 1
  explicit TorusVector(std::initializer_list<double> raw);
  static TorusVector FromRationals(std::span<const Rational> rs);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::optional<Rational>& tag(std::size_t i) const { return tags_[i]; }
  void set_tag(std::size_t i, Rational r);
  bool fully_rational() const;

 private:
  std::vector<double> coords_;
  std::vector<std::optional<Rational>> tags_;
};

// gamma = ((-x) mod 1, y mod 1), the torus shift induced by pi(x,y).
TorusVector gamma_of(const TFPoint& p);

// (z + m*gamma) mod 1. One fused multiply-add and one reduction per
// coordinate, so the error is O(eps * m * |gamma|), not compounded over m.
// When both operands carry rational tags the arithmetic is exact and the
// result is tagged.
TorusVector advance(const TorusVector& z, const TorusVector& gamma, std::uint64_t m);

enum class OrbitKind { kFinite, kInfiniteNondense, kDenseUpToBound, kUnresolved };

struct OrbitClass {
  OrbitKind kind = OrbitKind::kUnresolved;
  std::uint64_t order = 0;                  // finite only
  std::vector<std::int64_t> relation;       // infinite_nondense: (a_0, a_1, .., a_{2n})
  std::int64_t search_bound = 0;            // dense_up_to_bound: the cap H
  // dim_Q(Q + Qx + Qy) for n=1 (1, 2 or 3); 0 when not derivable
  int rational_dimension = 0;
};

std::string orbit_kind_name(OrbitKind k);

// Classifies the group generated by gamma modulo Z^{2n}:
//   (i)  every coordinate rational (tag, or continued-fraction match p/q,
//        q <= Q, within 1e-12)          -> finite with order lcm(q_i)
//   (ii) some integer vector a, max|a_i| <= H, with
//        |a_0 + sum a_i gamma_i| <= 1e-12 -> infinite_nondense(a)
//   (iii) otherwise                      -> dense_up_to_bound(H)
// The relation search enumerates the full box; if its size exceeds
// `budget` candidates the verdict is unresolved.
OrbitClass classify_generator(const TorusVector& gamma, std::int64_t Q, std::int64_t H,
                              std::uint64_t budget = 200000000ULL);

// max over the b^d axis-aligned boxes of |empirical fraction - box volume|
// along the forward orbit z0, z0+gamma, ..., z0+(m-1)gamma.
double orbit_discrepancy(const TorusVector& z0, const TorusVector& gamma, std::uint64_t m,
                         int boxes_per_axis);

struct LogProduct {
  double log_magnitude = 0.0;  // sum_{j<m} log |P(z + j gamma)|
  bool hit_zero = false;       // some |P(z+j gamma)| == 0.0 exactly
  std::uint64_t zero_index = 0;
};

LogProduct product_along_orbit(const TrigPoly& P, const TorusVector& z,
                               const TorusVector& gamma, std::uint64_t m);

// Telescoping check of |F(z+m gamma)| = prod_{j<m} |P(z+j gamma)| |F(z)|:
// per-step residuals delta_j = | |P(z_j)||F(z_j)| - |F(z_{j+1})| | are
// accumulated into the propagated bound B_m = sum_j delta_j prod_{k>j} |P|,
// and max_m (discrepancy_m - B_m) is reported. Values beyond fp noise mean
// the telescoping argument fails for this data.
struct TelescopeReport {
  double max_step_residual = 0.0;  // max_j delta_j
  double max_excess = 0.0;         // max_m (|F(z_m)| - prod*F0| - B_m), clamped at 0
  std::uint64_t steps = 0;
};

using TorusField = std::function<double(std::span<const double>)>;

TelescopeReport telescoping_check(const TorusField& P_mod, const TorusField& F_mod,
                                  const TorusVector& z0, const TorusVector& gamma,
                                  std::uint64_t m_max);

TelescopeReport verify_product_identity(const AnalyticFunction& f, const TrigPoly& P,
                                        const TFPoint& p, const TorusVector& z0,
                                        std::uint64_t m_max, int T);

}  // namespace zakhrt

#endif  // ZAKHRT_TORUS_HPP_
