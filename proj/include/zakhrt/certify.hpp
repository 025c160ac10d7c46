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

#ifndef ZAKHRT_CERTIFY_HPP_
#define ZAKHRT_CERTIFY_HPP_

#include <string>

#include "zakhrt/zeros.hpp"

namespace zakhrt {

// One integer lattice point of the F_(N,1) configuration: modulation l,
// translation m, i.e. pi(l,m) f(t) = e^{-2 pi i <l,t>} f(t - m).
struct LatticePoint {
  std::vector<int> l;
  std::vector<int> m;
  bool operator==(const LatticePoint&) const = default;
};

// N integer lattice points plus one distinguished real point (x, y).
// N = 0 is allowed so the Gram machinery can handle the distinguished
// vector alone; dependence fitting and certification need N >= 1.
struct TFSystem {
  int n = 1;
  std::vector<LatticePoint> lattice;
  TFPoint distinguished;

  std::size_t N() const { return lattice.size(); }
  void validate() const;
  TorusVector gamma() const { return gamma_of(distinguished); }
  // P with the given coefficients on the lattice frequencies; terms with
  // coefficient exactly 0 are dropped (TrigPoly forbids them).
  TrigPoly to_trig_poly(std::span<const cplx> coeffs) const;
};

// Dense Hermitian matrix, row-major.
struct HermitianMatrix {
  int dim = 0;
  std::vector<cplx> a;

  static HermitianMatrix Zero(int dim);
  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }
};

// (N+1)x(N+1) matrix of discrete inner products <pi(p_j) f, pi(p_k) f>
// over the sample grid [-T, T+1)^n at spacing 1/M (weight M^{-n});
// lattice points first, the distinguished point last. Conjugate symmetry
// is enforced exactly.
HermitianMatrix gram_matrix(const AnalyticFunction& f, const TFSystem& system, int T, int M);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  std::vector<cplx> vectors;   // column j = eigenvector of values[j], row-major dim x dim
};

// Cyclic complex Jacobi to relative off-diagonal tolerance 1e-12.
// Throws on a non-Hermitian input.
EigenDecomposition jacobi_hermitian(const HermitianMatrix& H);
double min_eigenvalue(const HermitianMatrix& H);

struct DependenceFit {
  std::vector<cplx> coefficients;  // c_1..c_N on the lattice points
  double relative_residual = 0.0;  // ||sum c_j pi_j f - pi_* f|| / ||f||
};

// Least squares over the sample grid via normal equations with a 1e-14
// Tikhonov floor on the lattice Gram block. The residual is evaluated by
// direct combination on the grid, not from the normal-equation algebra.
DependenceFit best_dependence(const AnalyticFunction& f, const TFSystem& system, int T, int M);

enum class Verdict {
  kIndependentNumerical,
  kIndependentProp1,
  kIndependentProp3,
  kInconclusive,
};

std::string verdict_name(Verdict v);

struct CertifyConfig {
  int M = 64;
  int T = 0;             // 0 -> default window of f
  int zero_M = 0;        // zero certification resolution; 0 -> 128 (n=1) / 16 (n>=2)
  std::int64_t Q = 1000000;
  std::int64_t H = 1000;
  std::uint64_t m_max = 100;
  double min_eig_threshold = 1e-4;   // relative to ||f||^2
  double residual_threshold = 1e-3;
  ZeroCertifyOptions zeros;
};

struct IndependenceCertificate {
  double gram_min_eig = 0.0;
  double ls_residual = 0.0;
  double feq_residual = 0.0;
  std::vector<cplx> coefficients;
  std::vector<int> negligible_coefficients;  // indices with |c_j| < 1e-10
  OrbitClass orbit;
  bool zeros_attempted = false;
  ZeroSetReport zeros;
  bool has_witness = false;
  InvarianceWitness witness;
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> notes;
};

// Runs the full evidence pipeline and combines it:
//   1. orbit dense (up to H) and Zak continuous       -> independent_prop1
//   2. orbit infinite non-dense and zero set finite   -> independent_prop3
//   3. Gram min eigenvalue and LS residual both above
//      their thresholds                               -> independent_numerical
//   4. otherwise                                      -> inconclusive
// Never claims dependence: truncation and quadrature error cannot certify
// an exact linear relation.
IndependenceCertificate certify(const AnalyticFunction& f, const TFSystem& system,
                                const CertifyConfig& config);

}  // namespace zakhrt

#endif  // ZAKHRT_CERTIFY_HPP_
