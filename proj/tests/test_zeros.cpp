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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "zakhrt/zeros.hpp"

using namespace zakhrt;

namespace {

constexpr double kPi = 3.14159265358979323846;

// geometric-series closed form of Z(two-sided exponential), t in [0,1)
double tse_zak_mod_closed(double a, double t, double w) {
  const cplx down = std::polar(1.0, -2.0 * kPi * w);
  const cplx up = std::polar(1.0, 2.0 * kPi * w);
  const double q = std::exp(-a);
  return std::abs(std::exp(-a * t) / (1.0 - q * down) +
                  std::exp(a * t) * q * up / (1.0 - q * up));
}

double dist_to(const std::vector<double>& loc, double a, double b) {
  return std::max(std::fabs(loc[0] - a), std::fabs(loc[1] - b));
}

}  // namespace

TEST_CASE("scan finds the single zero candidate") {
  SUBCASE("two-sided exponential") {
    const auto tse = AnalyticFunction::TwoSidedExponential(1.0, 1);
    const ZakGrid grid = zak_direct(tse, {1, 64, 25});
    const auto cands = scan_zeros(grid, 0.05);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].location == std::vector<double>{0.5, 0.5});
    CHECK(cands[0].value < 1e-8);
  }
  SUBCASE("gaussian") {
    const auto g = AnalyticFunction::Gaussian(1);
    const auto cands = scan_zeros(zak_direct(g, {1, 64, 10}), 0.05);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].location == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("box has no candidates: |F| constant 1") {
    const auto box = AnalyticFunction::BoxIndicator(1);
    CHECK(scan_zeros(zak_direct(box, {1, 16, 2}), 0.5).empty());
  }
  SUBCASE("threshold below truncation noise is rejected") {
    const auto tse = AnalyticFunction::TwoSidedExponential(1.0, 1);
    const ZakGrid grid = zak_direct(tse, {1, 32, 25});
    CHECK_THROWS_AS(scan_zeros(grid, grid.trunc_bound / 2.0), std::invalid_argument);
  }
}

TEST_CASE("refinement contracts to the zero") {
  SUBCASE("two-sided exponential from an offset start") {
    const auto tse = AnalyticFunction::TwoSidedExponential(1.0, 1);
    const double start[2] = {0.5 - 1.0 / 64.0, 0.5 + 1.0 / 128.0};
    const RefineOutcome r = refine_zero(tse, start, 1.5 / 64.0, 1e-6, 30);
    REQUIRE(r.converged);
    CHECK(dist_to(r.zero.location, 0.5, 0.5) <= 1e-6);
    CHECK(r.zero.residual <= 1e-6);
    CHECK(r.zero.radius <= 1e-6);
    // closed form at the refined location stays within 2x the residual
    CHECK(tse_zak_mod_closed(1.0, r.zero.location[0], r.zero.location[1]) <=
          2.0 * r.zero.residual + 1e-10);
  }
  SUBCASE("gaussian") {
    const auto g = AnalyticFunction::Gaussian(1);
    const double start[2] = {0.5 + 1.0 / 64.0, 0.5 - 1.0 / 64.0};
    const RefineOutcome r = refine_zero(g, start, 1.5 / 64.0, 1e-6, 10);
    REQUIRE(r.converged);
    CHECK(dist_to(r.zero.location, 0.5, 0.5) <= 1e-6);
    CHECK(r.zero.residual <= 1e-6);
  }
  SUBCASE("box refuses to contract") {
    const auto box = AnalyticFunction::BoxIndicator(1);
    const double start[2] = {0.3, 0.4};
    const RefineOutcome r = refine_zero(box, start, 0.1, 1e-6, 2);
    CHECK_FALSE(r.converged);
  }
  SUBCASE("bad radii are rejected") {
    const auto g = AnalyticFunction::Gaussian(1);
    const double start[2] = {0.5, 0.5};
    CHECK_THROWS_AS(refine_zero(g, start, 1e-8, 1e-6, 10), std::invalid_argument);
    CHECK_THROWS_AS(refine_zero(g, start, 0.0, 0.0, 10), std::invalid_argument);
  }
}

TEST_CASE("certified zero sets") {
  SUBCASE("two-sided exponential: one zero, bounded away elsewhere") {
    const auto tse = AnalyticFunction::TwoSidedExponential(1.0, 1);
    const ZeroSetReport rep = certify_finite_zero_set(tse, {1, 128, 25});
    REQUIRE(rep.zeros.size() == 1);
    CHECK(dist_to(rep.zeros[0].location, 0.5, 0.5) <= 1e-6);
    CHECK(rep.off_zero_lower_bound > 0.1);
    CHECK(rep.claims_finite);
    CHECK(rep.refinement_failures == 0);
  }
  SUBCASE("gaussian") {
    const auto g = AnalyticFunction::Gaussian(1);
    const ZeroSetReport rep = certify_finite_zero_set(g, {1, 128, 10});
    REQUIRE(rep.zeros.size() == 1);
    CHECK(dist_to(rep.zeros[0].location, 0.5, 0.5) <= 1e-6);
    CHECK(rep.off_zero_lower_bound > 0.1);
    CHECK(rep.claims_finite);
  }
  SUBCASE("box: empty zero set, lower bound exactly one") {
    const auto box = AnalyticFunction::BoxIndicator(1);
    const ZeroSetReport rep = certify_finite_zero_set(box, {1, 16, 2});
    CHECK(rep.zeros.empty());
    CHECK(rep.off_zero_lower_bound == 1.0);
    CHECK(rep.claims_finite);
  }
  SUBCASE("resolution stability: counts agree at M and 2M, centres move <= 2/M") {
    const auto g = AnalyticFunction::Gaussian(1);
    const ZeroSetReport r64 = certify_finite_zero_set(g, {1, 64, 10});
    const ZeroSetReport r128 = certify_finite_zero_set(g, {1, 128, 10});
    REQUIRE(r64.zeros.size() == r128.zeros.size());
    for (std::size_t i = 0; i < r64.zeros.size(); ++i) {
      CHECK(dist_to(r64.zeros[i].location, r128.zeros[i].location[0],
                    r128.zeros[i].location[1]) <= 2.0 / 64.0);
    }
  }
  SUBCASE("n=2 product gaussian: the zero set is a surface, finiteness fails") {
    const auto g2 = AnalyticFunction::Gaussian(2);
    const ZeroSetReport rep = certify_finite_zero_set(g2, {2, 16, 8});
    CHECK_FALSE(rep.claims_finite);
  }
}

TEST_CASE("zero-set invariance under the gamma action") {
  const auto g = AnalyticFunction::Gaussian(1);
  const ZeroSetReport rep = certify_finite_zero_set(g, {1, 64, 10});
  REQUIRE(rep.zeros.size() == 1);

  SUBCASE("gamma = (1/2,1/2) fails at m=1 with the theta value at the origin") {
    const ZeroInvarianceReport inv = check_zero_invariance(rep, TorusVector{0.5, 0.5}, g, 0.0);
    CHECK_FALSE(inv.holds);
    REQUIRE(inv.entries.size() == 1);
    const InvarianceWitness& w = inv.entries[0].witness;
    CHECK(w.m == 1);
    CHECK(std::fabs(w.point[0]) <= 1e-6);
    CHECK(std::fabs(w.point[1]) <= 1e-6);
    CHECK(w.value == doctest::Approx(1.2919960074815039).epsilon(1e-6));
  }
  SUBCASE("gamma = 0 holds trivially") {
    const ZeroInvarianceReport inv = check_zero_invariance(rep, TorusVector{0.0, 0.0}, g, 0.0);
    CHECK(inv.holds);
  }
  SUBCASE("two-sided exponential with an irrational gamma fails immediately") {
    const auto tse = AnalyticFunction::TwoSidedExponential(1.0, 1);
    const ZeroSetReport rt = certify_finite_zero_set(tse, {1, 64, 25});
    const TorusVector gamma{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0};
    const ZeroInvarianceReport inv = check_zero_invariance(rt, gamma, tse, 0.0, 50);
    CHECK_FALSE(inv.holds);
    CHECK(inv.entries[0].witness.m == 1);
    CHECK(inv.entries[0].witness.value > 0.1);
  }
  SUBCASE("reduced and unreduced representatives agree exactly") {
    // dyadic offsets reduce exactly, so verdict and witness match bitwise
    const ZeroInvarianceReport a = check_zero_invariance(rep, TorusVector{0.25, 0.75}, g, 0.0);
    const ZeroInvarianceReport b =
        check_zero_invariance(rep, TorusVector{5.25, -0.25}, g, 0.0);
    CHECK(a.holds == b.holds);
    REQUIRE((!a.holds && !b.holds));
    CHECK(a.entries[0].witness.m == b.entries[0].witness.m);
    CHECK(a.entries[0].witness.value == b.entries[0].witness.value);
  }
  SUBCASE("empty report is rejected") {
    const auto box = AnalyticFunction::BoxIndicator(1);
    const ZeroSetReport rb = certify_finite_zero_set(box, {1, 16, 2});
    CHECK_THROWS_AS(check_zero_invariance(rb, TorusVector{0.5, 0.5}, box, 0.0),
                    std::invalid_argument);
  }
}
