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

#include "zakhrt/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "zakhrt/kernels.hpp"

namespace zakhrt {

void TFSystem::validate() const {
  if (n < 1) throw std::invalid_argument("system dimension must be positive");
  distinguished.validate();
  if (distinguished.dimension() != n) throw std::invalid_argument("distinguished point dimension");
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (const auto& pt : lattice) {
    if (static_cast<int>(pt.l.size()) != n || static_cast<int>(pt.m.size()) != n) {
      throw std::invalid_argument("lattice point dimension");
    }
    if (!seen.insert({pt.l, pt.m}).second) {
      throw std::invalid_argument("lattice points must be pairwise distinct");
    }
    bool same = true;
    for (int d = 0; d < n; ++d) {
      same = same && distinguished.x[static_cast<std::size_t>(d)] == static_cast<double>(pt.m[static_cast<std::size_t>(d)]) &&
             distinguished.y[static_cast<std::size_t>(d)] == static_cast<double>(pt.l[static_cast<std::size_t>(d)]);
    }
    if (same) {
      throw std::invalid_argument("distinguished point coincides with a lattice point");
    }
  }
}

TrigPoly TFSystem::to_trig_poly(std::span<const cplx> coeffs) const {
  if (coeffs.size() != lattice.size()) throw std::invalid_argument("coefficient count mismatch");
  TrigPoly P;
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    if (coeffs[j] == cplx(0.0, 0.0)) continue;
    P.terms.push_back(TrigTerm{coeffs[j], lattice[j].l, lattice[j].m});
  }
  return P;
}

HermitianMatrix HermitianMatrix::Zero(int dim) {
  HermitianMatrix h;
  h.dim = dim;
  h.a.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), cplx{0.0, 0.0});
  return h;
}

namespace {

TFPoint lattice_tf_point(const LatticePoint& pt) {
  TFPoint p;
  p.x.assign(pt.m.begin(), pt.m.end());
  p.y.assign(pt.l.begin(), pt.l.end());
  return p;
}

// samples of every system vector: lattice shifts first, distinguished last
std::vector<SampledGrid> system_samples(const AnalyticFunction& f, const TFSystem& system,
                                        int T, int M) {
  std::vector<SampledGrid> vecs;
  vecs.reserve(system.N() + 1);
  for (const auto& pt : system.lattice) {
    vecs.push_back(sample(ShiftedFunction(f, lattice_tf_point(pt)), T, M));
  }
  vecs.push_back(sample(ShiftedFunction(f, system.distinguished), T, M));
  return vecs;
}

double quadrature_weight(int n, int M) {
  return std::pow(1.0 / static_cast<double>(M), n);
}

}  // namespace

HermitianMatrix gram_matrix(const AnalyticFunction& f, const TFSystem& system, int T, int M) {
  system.validate();
  if (!f.decaying() && f.kind() != FnKind::kBoxIndicator) {
    throw std::invalid_argument("gram needs a built-in function");
  }
  const std::vector<SampledGrid> vecs = system_samples(f, system, T, M);
  const int dim = static_cast<int>(vecs.size());
  const double w = quadrature_weight(system.n, M);
  HermitianMatrix G = HermitianMatrix::Zero(dim);

  // upper triangle entries in parallel, mirrored exactly
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < dim; ++j) {
    for (int k = j; k < dim; ++k) pairs.emplace_back(j, k);
  }
  std::vector<cplx> results(pairs.size());
  parallel_blocks(pairs.size(), [&](std::size_t idx) {
    const auto [j, k] = pairs[idx];
    results[idx] = reduce_dot_conj(vecs[static_cast<std::size_t>(j)].values,
                                   vecs[static_cast<std::size_t>(k)].values) * w;
  });
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto [j, k] = pairs[idx];
    if (j == k) {
      G.at(j, j) = cplx(results[idx].real(), 0.0);
    } else {
      G.at(j, k) = results[idx];
      G.at(k, j) = std::conj(results[idx]);
    }
  }
  return G;
}

EigenDecomposition jacobi_hermitian(const HermitianMatrix& H) {
  const int n = H.dim;
  if (n < 1) throw std::invalid_argument("empty matrix");
  double scale = 0.0;
  for (const cplx& v : H.a) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(H.at(i, j) - std::conj(H.at(j, i))) > 1e-12 * std::max(1.0, scale)) {
        throw std::invalid_argument("matrix is not Hermitian");
      }
    }
  }

  HermitianMatrix A = H;
  std::vector<cplx> V(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cplx{0.0, 0.0});
  for (int i = 0; i < n; ++i) V[static_cast<std::size_t>(i) * n + i] = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) s += std::norm(A.at(i, j));
    }
    return std::sqrt(2.0 * s);
  };
  double fro = 0.0;
  for (const cplx& v : A.a) fro += std::norm(v);
  fro = std::sqrt(fro);
  const double tol = 1e-12 * std::max(fro, 1e-300);

  for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = A.at(p, q);
        const double b = std::abs(apq);
        if (b <= 1e-300) continue;
        const cplx phase = apq / b;
        const double theta = (A.at(q, q).real() - A.at(p, p).real()) / (2.0 * b);
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double t = sign / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // R: R[pp] = c, R[pq] = s*phase, R[qp] = -s*conj(phase), R[qq] = c
        for (int i = 0; i < n; ++i) {
          const cplx aip = A.at(i, p), aiq = A.at(i, q);
          A.at(i, p) = c * aip - s * std::conj(phase) * aiq;
          A.at(i, q) = s * phase * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const cplx apj = A.at(p, j), aqj = A.at(q, j);
          A.at(p, j) = c * apj - s * phase * aqj;
          A.at(q, j) = s * std::conj(phase) * apj + c * aqj;
        }
        A.at(p, q) = cplx(0.0, 0.0);
        A.at(q, p) = cplx(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
          const cplx vip = V[static_cast<std::size_t>(i) * n + p];
          const cplx viq = V[static_cast<std::size_t>(i) * n + q];
          V[static_cast<std::size_t>(i) * n + p] = c * vip - s * std::conj(phase) * viq;
          V[static_cast<std::size_t>(i) * n + q] = s * phase * vip + c * viq;
        }
      }
    }
  }

  EigenDecomposition out;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = A.at(i, i).real();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return diag[static_cast<std::size_t>(a)] < diag[static_cast<std::size_t>(b)]; });
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cplx{0.0, 0.0});
  for (int j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = diag[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    for (int i = 0; i < n; ++i) {
      out.vectors[static_cast<std::size_t>(i) * n + j] =
          V[static_cast<std::size_t>(i) * n + order[static_cast<std::size_t>(j)]];
    }
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& H) { return jacobi_hermitian(H).values.front(); }

DependenceFit best_dependence(const AnalyticFunction& f, const TFSystem& system, int T, int M) {
  system.validate();
  const std::size_t N = system.N();
  if (N == 0) throw std::invalid_argument("dependence fit needs at least one lattice point");
  const std::vector<SampledGrid> vecs = system_samples(f, system, T, M);
  const double w = quadrature_weight(system.n, M);

  // normal equations: sum_k <u_k, u_j> c_k = <v, u_j>
  HermitianMatrix G = HermitianMatrix::Zero(static_cast<int>(N));
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = j; k < N; ++k) {
      const cplx g = reduce_dot_conj(vecs[k].values, vecs[j].values) * w;
      if (j == k) {
        G.at(static_cast<int>(j), static_cast<int>(j)) = cplx(g.real() + 1e-14, 0.0);
      } else {
        G.at(static_cast<int>(j), static_cast<int>(k)) = g;
        G.at(static_cast<int>(k), static_cast<int>(j)) = std::conj(g);
      }
    }
  }
  std::vector<cplx> b(N);
  for (std::size_t j = 0; j < N; ++j) {
    b[j] = reduce_dot_conj(vecs[N].values, vecs[j].values) * w;
  }

  const EigenDecomposition eig = jacobi_hermitian(G);
  const int dim = static_cast<int>(N);
  std::vector<cplx> c(N, cplx{0.0, 0.0});
  for (int j = 0; j < dim; ++j) {
    cplx proj{0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      proj += std::conj(eig.vectors[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)]) *
              b[static_cast<std::size_t>(i)];
    }
    const double lambda = std::max(eig.values[static_cast<std::size_t>(j)], 1e-14);
    proj /= lambda;
    for (int i = 0; i < dim; ++i) {
      c[static_cast<std::size_t>(i)] +=
          eig.vectors[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)] * proj;
    }
  }

  // residual by direct combination on the grid
  std::vector<cplx> r(vecs[N].values.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < N; ++j) acc += c[j] * vecs[j].values[i];
    r[i] = acc - vecs[N].values[i];
  }
  DependenceFit fit;
  fit.coefficients = std::move(c);
  fit.relative_residual = std::sqrt(reduce_sum_abs2(r) * w) / f.norm_l2();
  return fit;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kIndependentNumerical: return "independent_numerical";
    case Verdict::kIndependentProp1: return "independent_prop1";
    case Verdict::kIndependentProp3: return "independent_prop3";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

IndependenceCertificate certify(const AnalyticFunction& f, const TFSystem& system,
                                const CertifyConfig& config) {
  system.validate();
  if (system.N() == 0) throw std::invalid_argument("certification needs at least one lattice point");
  const int T = config.T > 0 ? config.T : f.default_window();
  IndependenceCertificate cert;

  cert.gram_min_eig = min_eigenvalue(gram_matrix(f, system, T, config.M));

  const DependenceFit fit = best_dependence(f, system, T, config.M);
  cert.ls_residual = fit.relative_residual;
  cert.coefficients = fit.coefficients;
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
    if (std::abs(fit.coefficients[j]) < 1e-10) {
      cert.negligible_coefficients.push_back(static_cast<int>(j));
    }
  }

  // functional-equation residual at the fitted coefficients
  const TrigPoly P = system.to_trig_poly(fit.coefficients);
  ZakGridSpec spec{system.n, config.M, T};
  if (!P.terms.empty()) {
    cert.feq_residual = functional_equation_residual(f, P, system.distinguished, spec);
  } else {
    // all coefficients were exactly zero; the identity degenerates to
    // sup |F(z+gamma)|
    const ZakGrid zf = zak_direct(f, spec);
    const std::vector<double> mod = modulus_grid(zf);
    cert.feq_residual = std::max(0.0, kernels::active().vmax(mod.data(), mod.size()));
    cert.notes.push_back("all fitted coefficients are exactly zero");
  }

  cert.orbit = classify_generator(system.gamma(), config.Q, config.H);

  if (f.decaying()) {
    cert.zeros_attempted = true;
    const int zero_M = config.zero_M > 0 ? config.zero_M : (system.n == 1 ? 128 : 16);
    ZakGridSpec zspec{system.n, zero_M, T};
    cert.zeros = certify_finite_zero_set(f, zspec, config.zeros);
    if (!cert.zeros.zeros.empty()) {
      const ZeroInvarianceReport inv =
          check_zero_invariance(cert.zeros, system.gamma(), f, 0.0, config.m_max);
      for (const auto& entry : inv.entries) {
        if (!entry.holds) {
          cert.has_witness = true;
          cert.witness = entry.witness;
          break;
        }
      }
    }
  } else {
    cert.notes.push_back(
        "box indicator: Zak transform is discontinuous with constant modulus 1; "
        "dense-orbit and zero-set branches disabled");
  }

  const double norm2 = f.norm_l2() * f.norm_l2();
  const bool numeric_ok = cert.gram_min_eig > config.min_eig_threshold * norm2 &&
                          cert.ls_residual > config.residual_threshold;
  if (f.decaying() && cert.orbit.kind == OrbitKind::kDenseUpToBound) {
    cert.verdict = Verdict::kIndependentProp1;
  } else if (cert.orbit.kind == OrbitKind::kInfiniteNondense && cert.zeros_attempted &&
             cert.zeros.claims_finite) {
    cert.verdict = Verdict::kIndependentProp3;
  } else if (numeric_ok) {
    cert.verdict = Verdict::kIndependentNumerical;
    if (cert.orbit.kind == OrbitKind::kFinite) {
      cert.notes.push_back(
          "rational time-frequency shift: linear independence is known unconditionally; "
          "reported here on numerical evidence only");
    }
  } else {
    cert.verdict = Verdict::kInconclusive;
  }
  return cert;
}

}  // namespace zakhrt
