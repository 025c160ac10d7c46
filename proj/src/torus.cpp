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

#include "zakhrt/torus.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zakhrt {

namespace {
constexpr double kRelationTol = 1e-12;
constexpr double kTagTol = 1e-15;

std::int64_t mulmod_i64(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % q);
}
}  // namespace

Rational Rational::reduced(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("rational: zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return Rational{p, q};
}

Rational Rational::mod1() const {
  std::int64_t r = p % q;
  if (r < 0) r += q;
  return Rational{r, q};
}

TorusVector::TorusVector(std::span<const double> raw) {
  coords_.reserve(raw.size());
  for (double v : raw) {
    if (!std::isfinite(v)) throw std::invalid_argument("torus vector: non-finite coordinate");
    coords_.push_back(frac_unit(v));
  }
  tags_.resize(raw.size());
}

TorusVector::TorusVector(std::initializer_list<double> raw)
    : TorusVector(std::span<const double>(raw.begin(), raw.size())) {}

TorusVector TorusVector::FromRationals(std::span<const Rational> rs) {
  TorusVector v;
  v.coords_.reserve(rs.size());
  v.tags_.reserve(rs.size());
  for (const Rational& r : rs) {
    const Rational rm = Rational::reduced(r.p, r.q).mod1();
    v.coords_.push_back(rm.value());
    v.tags_.emplace_back(rm);
  }
  return v;
}

void TorusVector::set_tag(std::size_t i, Rational r) {
  const Rational rm = Rational::reduced(r.p, r.q).mod1();
  if (std::fabs(coords_[i] - rm.value()) > kTagTol) {
    throw std::invalid_argument("rational tag does not match coordinate");
  }
  tags_[i] = rm;
}

bool TorusVector::fully_rational() const {
  for (const auto& t : tags_) {
    if (!t.has_value()) return false;
  }
  return !tags_.empty();
}

TorusVector gamma_of(const TFPoint& p) {
  p.validate();
  const int n = p.dimension();
  std::vector<double> g(static_cast<std::size_t>(2 * n));
  for (int d = 0; d < n; ++d) {
    g[static_cast<std::size_t>(d)] = -p.x[static_cast<std::size_t>(d)];
    g[static_cast<std::size_t>(d + n)] = p.y[static_cast<std::size_t>(d)];
  }
  return TorusVector(g);
}

TorusVector advance(const TorusVector& z, const TorusVector& gamma, std::uint64_t m) {
  if (z.dim() != gamma.dim()) throw std::invalid_argument("advance: dimension mismatch");
  const int d = z.dim();
  std::vector<double> coords(static_cast<std::size_t>(d));
  std::vector<std::optional<Rational>> tags(static_cast<std::size_t>(d));
  const double md = static_cast<double>(m);
  for (int i = 0; i < d; ++i) {
    const std::size_t si = static_cast<std::size_t>(i);
    const auto& zt = z.tag(si);
    const auto& gt = gamma.tag(si);
    if (zt && gt && zt->q <= (std::int64_t{1} << 31) && gt->q <= (std::int64_t{1} << 31)) {
      // exact: (z.p/z.q + m*g.p/g.q) mod 1 over the common denominator
      const std::int64_t q = std::lcm(zt->q, gt->q);
      const std::int64_t mg = mulmod_i64(
          static_cast<std::int64_t>(m % static_cast<std::uint64_t>(q)), gt->p * (q / gt->q), q);
      std::int64_t p = (zt->p * (q / zt->q) + mg) % q;
      if (p < 0) p += q;
      const Rational r = Rational::reduced(p, q);
      coords[si] = r.value();
      tags[si] = r;
    } else {
      coords[si] = frac_unit(std::fma(md, gamma[si], z[si]));
    }
  }
  TorusVector result(coords);
  for (int i = 0; i < d; ++i) {
    if (tags[static_cast<std::size_t>(i)]) {
      result.set_tag(static_cast<std::size_t>(i), *tags[static_cast<std::size_t>(i)]);
    }
  }
  return result;
}

std::string orbit_kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::kFinite: return "finite";
    case OrbitKind::kInfiniteNondense: return "infinite_nondense";
    case OrbitKind::kDenseUpToBound: return "dense_up_to_bound";
    case OrbitKind::kUnresolved: return "unresolved";
  }
  return "?";
}

namespace {

// Best continued-fraction approximation p/q with q <= Q; returns true when
// it matches x to kRelationTol.
bool rational_of(double x, std::int64_t Q, Rational* out) {
  std::int64_t pprev = 1, qprev = 0;
  std::int64_t pcur = static_cast<std::int64_t>(std::floor(x));
  std::int64_t qcur = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::fabs(x - static_cast<double>(pcur) / static_cast<double>(qcur)) <= kRelationTol) {
      *out = Rational::reduced(pcur, qcur).mod1();
      return true;
    }
    if (frac == 0.0) return false;
    const double inv = 1.0 / frac;
    const double a = std::floor(inv);
    if (a > 9.0e18) return false;
    const std::int64_t ai = static_cast<std::int64_t>(a);
    // guard overflow of p,q
    if (qcur != 0 && (ai > (std::int64_t{1} << 62) / qcur)) return false;
    const std::int64_t pnext = ai * pcur + pprev;
    const std::int64_t qnext = ai * qcur + qprev;
    if (qnext > Q) return false;
    pprev = pcur;
    qprev = qcur;
    pcur = pnext;
    qcur = qnext;
    frac = inv - a;
  }
  return false;
}

void normalize_relation(std::vector<std::int64_t>* rel) {
  std::int64_t g = 0;
  for (std::int64_t a : *rel) g = std::gcd(g, a < 0 ? -a : a);
  if (g > 1) {
    for (auto& a : *rel) a /= g;
  }
  for (std::int64_t a : *rel) {
    if (a != 0) {
      if (a < 0) {
        for (auto& v : *rel) v = -v;
      }
      break;
    }
  }
}

}  // namespace

OrbitClass classify_generator(const TorusVector& gamma, std::int64_t Q, std::int64_t H,
                              std::uint64_t budget) {
  if (Q < 1 || H < 1) throw std::invalid_argument("classification caps must be >= 1");
  const int d = gamma.dim();
  if (d < 2) throw std::invalid_argument("gamma must have dimension 2n >= 2");
  OrbitClass out;

  // (i) all-coordinates-rational: exact tags first, continued fractions else
  {
    bool all_rational = true;
    unsigned __int128 order = 1;
    for (int i = 0; i < d && all_rational; ++i) {
      Rational r;
      if (gamma.tag(static_cast<std::size_t>(i))) {
        r = *gamma.tag(static_cast<std::size_t>(i));
      } else if (!rational_of(gamma[static_cast<std::size_t>(i)], Q, &r)) {
        all_rational = false;
        break;
      }
      // order = lcm of the reduced denominators
      const std::int64_t qi = r.q;
      const unsigned __int128 g = static_cast<unsigned __int128>(
          std::gcd(static_cast<std::int64_t>(order % static_cast<unsigned __int128>(qi)), qi));
      order = order / g * static_cast<unsigned __int128>(qi);
      if (order > (static_cast<unsigned __int128>(1) << 62)) {
        out.kind = OrbitKind::kUnresolved;
        return out;
      }
    }
    if (all_rational) {
      out.kind = OrbitKind::kFinite;
      out.order = static_cast<std::uint64_t>(order);
      out.rational_dimension = (d == 2) ? 1 : 0;
      return out;
    }
  }

  // (ii) integer relation a_0 + sum a_i gamma_i = 0, max |a_i| <= H.
  // The box over (a_1..a_d) is enumerated once; a_0 is forced to the
  // nearest integer. Among hits the (max-norm, L1, lexicographic) minimum
  // is reported, so the answer does not depend on enumeration order.
  {
    const double width = 2.0 * static_cast<double>(H) + 1.0;
    double space = 1.0;
    for (int i = 0; i < d; ++i) space *= width;
    if (space > static_cast<double>(budget)) {
      out.kind = OrbitKind::kUnresolved;
      return out;
    }
    std::vector<std::int64_t> best;
    auto better = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
      auto maxnorm = [](const std::vector<std::int64_t>& v) {
        std::int64_t m = 0;
        for (auto x : v) m = std::max(m, x < 0 ? -x : x);
        return m;
      };
      auto l1 = [](const std::vector<std::int64_t>& v) {
        std::int64_t s = 0;
        for (auto x : v) s += x < 0 ? -x : x;
        return s;
      };
      if (maxnorm(a) != maxnorm(b)) return maxnorm(a) < maxnorm(b);
      if (l1(a) != l1(b)) return l1(a) < l1(b);
      return a < b;
    };

    std::vector<std::int64_t> a(static_cast<std::size_t>(d), -H);
    std::vector<std::int64_t> rel(static_cast<std::size_t>(d) + 1);
    for (;;) {
      bool nonzero = false;
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        s += static_cast<double>(a[static_cast<std::size_t>(i)]) * gamma[static_cast<std::size_t>(i)];
        nonzero = nonzero || a[static_cast<std::size_t>(i)] != 0;
      }
      if (nonzero) {
        const double a0 = -std::nearbyint(s);
        if (std::fabs(a0) <= static_cast<double>(H) && std::fabs(a0 + s) <= kRelationTol) {
          rel[0] = static_cast<std::int64_t>(a0);
          for (int i = 0; i < d; ++i) rel[static_cast<std::size_t>(i) + 1] = a[static_cast<std::size_t>(i)];
          normalize_relation(&rel);
          if (best.empty() || better(rel, best)) best = rel;
        }
      }
      int i = d - 1;
      for (; i >= 0; --i) {
        if (++a[static_cast<std::size_t>(i)] <= H) break;
        a[static_cast<std::size_t>(i)] = -H;
      }
      if (i < 0) break;
    }
    if (!best.empty()) {
      out.kind = OrbitKind::kInfiniteNondense;
      out.relation = std::move(best);
      out.rational_dimension = (d == 2) ? 2 : 0;
      return out;
    }
  }

  // (iii) no relation at the cap; Weyl: for n=1 this means 1, x, y are
  // rationally independent as far as H can see.
  out.kind = OrbitKind::kDenseUpToBound;
  out.search_bound = H;
  out.rational_dimension = (d == 2) ? 3 : 0;
  return out;
}

double orbit_discrepancy(const TorusVector& z0, const TorusVector& gamma, std::uint64_t m,
                         int boxes_per_axis) {
  if (m < 1) throw std::invalid_argument("discrepancy needs m >= 1");
  if (boxes_per_axis < 2) throw std::invalid_argument("discrepancy needs b >= 2");
  if (z0.dim() != gamma.dim()) throw std::invalid_argument("dimension mismatch");
  const int d = z0.dim();
  const std::size_t cells = pow_size(static_cast<std::size_t>(boxes_per_axis), d);
  std::vector<std::uint64_t> counts(cells, 0);
  const double b = static_cast<double>(boxes_per_axis);
  for (std::uint64_t j = 0; j < m; ++j) {
    const TorusVector z = advance(z0, gamma, j);
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) {
      auto cell = static_cast<std::int64_t>(std::floor(z[static_cast<std::size_t>(i)] * b));
      if (cell >= boxes_per_axis) cell = boxes_per_axis - 1;
      if (cell < 0) cell = 0;
      idx = idx * static_cast<std::size_t>(boxes_per_axis) + static_cast<std::size_t>(cell);
    }
    ++counts[idx];
  }
  const double vol = 1.0 / static_cast<double>(cells);
  double worst = 0.0;
  for (std::uint64_t c : counts) {
    worst = std::max(worst, std::fabs(static_cast<double>(c) / static_cast<double>(m) - vol));
  }
  return worst;
}

LogProduct product_along_orbit(const TrigPoly& P, const TorusVector& z,
                               const TorusVector& gamma, std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("product needs m >= 1");
  P.validate();
  LogProduct out;
  CompensatedSum acc;
  for (std::uint64_t j = 0; j < m; ++j) {
    const TorusVector zj = advance(z, gamma, j);
    const double mag = std::abs(eval_trig_poly(P, zj.coords()));
    if (mag == 0.0) {
      out.hit_zero = true;
      out.zero_index = j;
      out.log_magnitude = acc.value();
      return out;
    }
    acc.add(std::log(mag));
  }
  out.log_magnitude = acc.value();
  return out;
}

TelescopeReport telescoping_check(const TorusField& P_mod, const TorusField& F_mod,
                                  const TorusVector& z0, const TorusVector& gamma,
                                  std::uint64_t m_max) {
  TelescopeReport rep;
  rep.steps = m_max;
  const double f0 = F_mod(z0.coords());
  double running_product = 1.0;   // prod_{j<m} |P(z_j)|
  double propagated = 0.0;        // sum_j delta_j prod_{k>j} |P(z_k)|
  double f_prev = f0;
  for (std::uint64_t mstep = 1; mstep <= m_max; ++mstep) {
    const TorusVector zj = advance(z0, gamma, mstep - 1);
    const double pj = P_mod(zj.coords());
    const TorusVector znext = advance(z0, gamma, mstep);
    const double fnext = F_mod(znext.coords());
    const double delta = std::fabs(pj * f_prev - fnext);
    rep.max_step_residual = std::max(rep.max_step_residual, delta);
    propagated = propagated * pj + delta;
    running_product *= pj;
    const double discrepancy = std::fabs(fnext - running_product * f0);
    rep.max_excess = std::max(rep.max_excess, discrepancy - propagated);
    f_prev = fnext;
  }
  rep.max_excess = std::max(rep.max_excess, 0.0);
  return rep;
}

TelescopeReport verify_product_identity(const AnalyticFunction& f, const TrigPoly& P,
                                        const TFPoint& p, const TorusVector& z0,
                                        std::uint64_t m_max, int T) {
  P.validate();
  const TorusVector gamma = gamma_of(p);
  const TorusField pmod = [&P](std::span<const double> z) {
    return std::abs(eval_trig_poly(P, z));
  };
  const TorusField fmod = [&f, T](std::span<const double> z) {
    return zak_point_modulus(f, z, T);
  };
  return telescoping_check(pmod, fmod, z0, gamma, m_max);
}

}  // namespace zakhrt
