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
#include <random>

#include "zakhrt/functions.hpp"
#include "zakhrt/util.hpp"

using namespace zakhrt;

namespace {
constexpr double kPi = 3.14159265358979323846;

double eval1(const AnalyticFunction& f, double t) {
  const double pt[1] = {t};
  return f.evaluate(pt);
}
}  // namespace

TEST_CASE("closed-form point values") {
  const auto g = AnalyticFunction::Gaussian(1);
  const auto e = AnalyticFunction::TwoSidedExponential(1.0, 1);
  const auto b = AnalyticFunction::BoxIndicator(1);
  CHECK(eval1(g, 0.0) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
  CHECK(eval1(e, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(eval1(b, 1.0) == 0.0);  // half-open support
  CHECK(eval1(b, 0.0) == 1.0);
  CHECK(eval1(b, 0.999) == 1.0);
  CHECK(eval1(b, -1e-9) == 0.0);

  // product form in n = 2: 2^{2/4} e^{-pi |t|^2}
  const auto g2 = AnalyticFunction::Gaussian(2);
  const double pt[2] = {0.5, -0.25};
  CHECK(g2.evaluate(pt) ==
        doctest::Approx(std::sqrt(2.0) * std::exp(-kPi * (0.25 + 0.0625))).epsilon(1e-13));
}

TEST_CASE("closed-form norms") {
  CHECK(AnalyticFunction::Gaussian(1).norm_l2() == 1.0);
  CHECK(AnalyticFunction::TwoSidedExponential(1.0, 1).norm_l2() == 1.0);
  CHECK(AnalyticFunction::TwoSidedExponential(2.0, 1).norm_l2() ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(AnalyticFunction::BoxIndicator(3).norm_l2() == 1.0);
  CHECK(AnalyticFunction::TwoSidedExponential(1.0, 2).norm_l2() == 1.0);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(AnalyticFunction::TwoSidedExponential(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticFunction::TwoSidedExponential(-1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticFunction::Gaussian(0), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticFunction::FromSpec("sinc", 1.0, 1), std::invalid_argument);
}

TEST_CASE("time-frequency shift values") {
  const auto g = AnalyticFunction::Gaussian(1);
  const double t0[1] = {0.0}, t1[1] = {1.0};

  const auto id = apply_tf_shift(g, TFPoint::Zero(1));
  CHECK(id.evaluate(t0) == cplx(std::pow(2.0, 0.25), 0.0));

  const auto trans = apply_tf_shift(g, TFPoint{{1.0}, {0.0}});
  CHECK(trans.evaluate(t1).real() == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(trans.evaluate(t1).imag() == 0.0);

  // phase e^{-2 pi i (1/2)(1)} = -1, exactly
  const auto mod = apply_tf_shift(g, TFPoint{{0.0}, {0.5}});
  const cplx v = mod.evaluate(t1);
  CHECK(v.real() == -eval1(g, 1.0));
  CHECK(v.real() == doctest::Approx(-std::pow(2.0, 0.25) * std::exp(-kPi)).epsilon(1e-13));
}

TEST_CASE("phase correctness: |pi(p) f| == |f(.-x)|") {
  const auto g = AnalyticFunction::Gaussian(1);
  std::mt19937_64 rng(17);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0; };
  for (int i = 0; i < 200; ++i) {
    const TFPoint p{{u()}, {u()}};
    const auto sf = apply_tf_shift(g, p);
    const double t[1] = {u()};
    const double shifted[1] = {t[0] - p.x[0]};
    CHECK(std::abs(sf.evaluate(t)) == doctest::Approx(g.evaluate(shifted)).epsilon(1e-15));
  }
}

TEST_CASE("sampling grid layout and values") {
  const auto g = AnalyticFunction::Gaussian(1);
  const SampledGrid sg = sample(g, 1, 2);
  CHECK(sg.values.size() == 6);  // M(2T+1) = 2*3
  CHECK(sg.node(0) == -1.0);
  // node t = -1 -> 2^{1/4} e^{-pi}
  CHECK(sg.values[0].real() ==
        doctest::Approx(std::pow(2.0, 0.25) * std::exp(-kPi)).epsilon(1e-13));

  const auto b = AnalyticFunction::BoxIndicator(1);
  const SampledGrid sb = sample(b, 1, 2);
  // node 0.5 has index 3
  CHECK(sb.node(3) == 0.5);
  CHECK(sb.values[3] == cplx(1.0, 0.0));

  const auto g2 = AnalyticFunction::Gaussian(2);
  const SampledGrid s2 = sample(g2, 1, 2);
  CHECK(s2.values.size() == 36);
}

TEST_CASE("sampling validation errors") {
  const auto g = AnalyticFunction::Gaussian(1);
  CHECK_THROWS_AS(sample(g, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(sample(g, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample(g, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(sample(g, -2, 4), std::invalid_argument);
}

TEST_CASE("tail bound closed forms and monotonicity") {
  const auto e = AnalyticFunction::TwoSidedExponential(1.0, 1);
  // recorded B(20) <= 2 e^{-19} / (1 - e^{-1})
  CHECK(e.tail_bound(20) <= 2.0 * std::exp(-19.0) / (1.0 - std::exp(-1.0)));
  CHECK(e.tail_bound(20) > 0.0);
  for (const auto& f : {AnalyticFunction::Gaussian(1), e}) {
    CHECK(f.tail_bound(5) >= f.tail_bound(10));
    CHECK(f.tail_bound(10) >= f.tail_bound(20));
  }
  CHECK(AnalyticFunction::BoxIndicator(1).tail_bound(1) == 0.0);
  CHECK(AnalyticFunction::BoxIndicator(2).tail_bound(2) == 0.0);
  // default windows hit B(T) <= 1e-10
  for (const auto& f : {AnalyticFunction::Gaussian(1),
                        AnalyticFunction::TwoSidedExponential(1.0, 1),
                        AnalyticFunction::TwoSidedExponential(0.5, 1)}) {
    CHECK(f.tail_bound(f.default_window()) <= 1e-10);
  }
  CHECK(AnalyticFunction::TwoSidedExponential(1.0, 1).default_window() == 25);
}

// Soundness: numerically summing cell suprema of |f| over the shells
// |tau|_inf in [T, T+50] must stay below B(T).
TEST_CASE("tail bound soundness against numeric shell sums") {
  auto sup_cell = [](const AnalyticFunction& f, long tau) {
    double s = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double t = std::min(static_cast<double>(i) / 64.0, 0.999999999);
      s = std::max(s, std::fabs(eval1(f, t + static_cast<double>(tau))));
    }
    return s;
  };
  for (const auto& f : {AnalyticFunction::Gaussian(1),
                        AnalyticFunction::TwoSidedExponential(1.0, 1),
                        AnalyticFunction::TwoSidedExponential(2.5, 1)}) {
    for (int T : {5, 10, 20}) {
      double shell = 0.0;
      for (long tau = -(T + 50); tau <= T + 50; ++tau) {
        if (std::labs(tau) < T) continue;
        shell += sup_cell(f, tau);
      }
      CHECK(shell <= f.tail_bound(T) * (1.0 + 1e-12));
    }
  }
  // n = 2: product suprema over the square shell
  const auto g2 = AnalyticFunction::Gaussian(2);
  const auto g1 = AnalyticFunction::Gaussian(1);
  for (int T : {5, 10}) {
    double shell = 0.0;
    for (long t1 = -(T + 50); t1 <= T + 50; ++t1) {
      for (long t2 = -(T + 50); t2 <= T + 50; ++t2) {
        if (std::max(std::labs(t1), std::labs(t2)) < T) continue;
        shell += sup_cell(g1, t1) * sup_cell(g1, t2);
      }
    }
    CHECK(shell <= g2.tail_bound(T) * (1.0 + 1e-12));
  }
}

TEST_CASE("shift isometry on the sampled grid") {
  const auto g = AnalyticFunction::Gaussian(1);
  const int T = 10, M = 32;
  const SampledGrid base = sample(g, T, M);
  const double nb = std::sqrt(reduce_sum_abs2(base.values) / M);
  for (const TFPoint& p : {TFPoint{{0.5}, {0.3}}, TFPoint{{-1.0}, {0.0}}, TFPoint{{1.75}, {-2.0}}}) {
    const SampledGrid shifted = sample(apply_tf_shift(g, p), T, M);
    const double ns = std::sqrt(reduce_sum_abs2(shifted.values) / M);
    CHECK(std::fabs(ns - nb) <= 10.0 * base.tail_bound + 1e-12);
  }
}
