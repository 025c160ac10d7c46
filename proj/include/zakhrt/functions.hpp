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

#ifndef ZAKHRT_FUNCTIONS_HPP_
#define ZAKHRT_FUNCTIONS_HPP_

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "zakhrt/util.hpp"

namespace zakhrt {

enum class FnKind { kGaussian, kTwoSidedExponential, kBoxIndicator };

// A test function on R^n with closed-form values, norm, and decay bounds.
// All built-in kinds are products of one 1-D profile across coordinates:
//   gaussian                f(t) = 2^{n/4} exp(-pi |t|^2),    ||f||_2 = 1
//   two_sided_exponential   f(t) = prod_k exp(-a |t_k|),      ||f||_2 = a^{-n/2}
//   box_indicator           f(t) = 1 on [0,1)^n else 0,       ||f||_2 = 1
class AnalyticFunction {
 public:
  static AnalyticFunction Gaussian(int n);
  static AnalyticFunction TwoSidedExponential(double a, int n);
  static AnalyticFunction BoxIndicator(int n);
  // Parses the run-config record {"kind": ..., "a": ..., "n": ...}.
  static AnalyticFunction FromSpec(const std::string& kind, double a, int n);

  FnKind kind() const { return kind_; }
  int dimension() const { return n_; }
  double decay_rate() const { return a_; }
  std::string name() const;

  // True for kinds whose Zak transform is continuous (gaussian, two-sided
  // exponential); false for the box indicator.
  bool decaying() const { return kind_ != FnKind::kBoxIndicator; }

  double evaluate1d(double t) const;
  double evaluate(std::span<const double> t) const;  // imaginary part is 0
  double norm_l2() const;

  // Tail bound B(T): sum over |tau|_inf >= T of sup_{t in [0,1)^n} |f(t+tau)|,
  // monotone non-increasing in T. Controls Zak truncation error.
  double tail_bound(int T) const;

  // Truncation window making B(T) <= 1e-10 (box: its support).
  int default_window() const;

 private:
  AnalyticFunction(FnKind kind, int n, double a);
  // sup over t in [0,1) of |f1(t + tau)|
  double shell_sup(long tau) const;

  FnKind kind_;
  int n_;
  double a_;
};

// A point (x, y) in the time-frequency plane: x translation, y modulation.
struct TFPoint {
  std::vector<double> x;
  std::vector<double> y;

  static TFPoint Zero(int n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)}; }
  int dimension() const { return static_cast<int>(x.size()); }
  void validate() const;  // finite entries, matching lengths
};

// pi(x,y) f: t -> e^{-2 pi i <y,t>} f(t - x). Modulation after translation,
// matching the group element exp(sum y Y) exp(sum x X). Evaluation is pure
// and safe to call concurrently.
class ShiftedFunction {
 public:
  ShiftedFunction(AnalyticFunction f, TFPoint p);
  cplx evaluate(std::span<const double> t) const;
  const AnalyticFunction& base() const { return f_; }
  const TFPoint& shift() const { return p_; }

 private:
  AnalyticFunction f_;
  TFPoint p_;
};

ShiftedFunction apply_tf_shift(const AnalyticFunction& f, const TFPoint& p);

// Uniform samples on [-T, T+1)^n at nodes i/M (offset 0), row-major,
// M*(2T+1) nodes per axis.
struct SampledGrid {
  int n = 0;
  int M = 0;
  int T = 0;
  std::vector<cplx> values;
  double tail_bound = 0.0;

  std::size_t axis_count() const { return static_cast<std::size_t>(M) * (2 * T + 1); }
  double node(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(T) * M) / M;
  }
};

SampledGrid sample(const AnalyticFunction& f, int T, int M);
SampledGrid sample(const ShiftedFunction& f, int T, int M);

}  // namespace zakhrt

#endif  // ZAKHRT_FUNCTIONS_HPP_
