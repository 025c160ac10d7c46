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

#ifndef ZAKHRT_ZEROS_HPP_
#define ZAKHRT_ZEROS_HPP_

#include "zakhrt/torus.hpp"
#include "zakhrt/zak.hpp"

namespace zakhrt {

struct ZeroCandidate {
  std::vector<std::size_t> node;   // grid multi-index (i..., k...)
  std::vector<double> location;    // node / M
  double value = 0.0;              // |F| at the node
};

// Grid-local minima of |F| (all 3^{2n}-1 wrapped neighbours, non-strict)
// with value < threshold. Throws when threshold is not above the grid's
// truncation bound: candidates below the noise floor are meaningless.
std::vector<ZeroCandidate> scan_zeros(const ZakGrid& grid, double threshold);

struct ZeroPoint {
  std::vector<double> location;  // in [0,1)^{2n}
  double residual = 0.0;         // |F| at the location
  double radius = 0.0;           // final box radius
};

struct RefineOutcome {
  bool converged = false;
  ZeroPoint zero;
  int rounds = 0;
};

// Shrinking-box search: a 3^{2n} probe stencil around the incumbent,
// recentre on the argmin, halve the radius, repeat to below target_radius
// (plus three safety halvings). The probe minimum is monotone
// non-increasing by construction; several rounds without decrease while
// the incumbent still sits above noise_floor mean the candidate is not an
// isolated zero, and the refinement reports failure. Below noise_floor the
// value is indistinguishable from a true zero at this truncation and only
// the radius contract remains.
RefineOutcome refine_zero(const AnalyticFunction& f, std::span<const double> start,
                          double start_radius, double target_radius, int T,
                          double noise_floor = 1e-8);

struct ZeroCertifyOptions {
  double scan_threshold = 0.05;
  double target_radius = 1e-7;
  // "off-zero" means outside the sup-metric ball of this radius around
  // each refined zero
  double exclusion_radius = 0.2;
  // more candidates than this means the zero set is not point-like at
  // this resolution; refinement is skipped and finiteness is not claimed
  std::size_t max_candidates = 256;
};

struct ZeroSetReport {
  std::vector<ZeroPoint> zeros;
  double off_zero_lower_bound = 0.0;  // min |F| on grid nodes outside the balls
  ZakGridSpec grid;
  double accept_threshold = 0.0;      // max(10 * truncation bound, 1e-8)
  int refinement_failures = 0;
  bool candidate_overflow = false;
  bool claims_finite = false;
};

ZeroSetReport certify_finite_zero_set(const AnalyticFunction& f, const ZakGridSpec& spec,
                                      const ZeroCertifyOptions& opts = {});

struct InvarianceWitness {
  std::vector<double> zero;   // lambda
  std::uint64_t m = 0;
  std::vector<double> point;  // (lambda + m gamma) mod 1
  double value = 0.0;         // |F| there, > tol
};

struct ZeroInvarianceEntry {
  std::vector<double> zero;
  bool holds = false;
  InvarianceWitness witness;  // valid when !holds
};

struct ZeroInvarianceReport {
  bool holds = false;   // all zeros hold up to m_max
  std::uint64_t m_max = 0;
  double tol = 0.0;
  std::vector<ZeroInvarianceEntry> entries;
};

// Checks |F((lambda + m gamma) mod 1)| <= tol for every refined zero and
// m = 1..m_max. A failure witnesses that the zero set is not invariant
// under gamma, which rules out any dependence relation inducing gamma.
// tol <= 0 selects max(1e-6, accept_threshold, 2 * worst residual).
ZeroInvarianceReport check_zero_invariance(const ZeroSetReport& report,
                                           const TorusVector& gamma,
                                           const AnalyticFunction& f, double tol,
                                           std::uint64_t m_max = 100);

}  // namespace zakhrt

#endif  // ZAKHRT_ZEROS_HPP_
