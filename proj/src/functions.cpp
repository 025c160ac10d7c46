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

#include "zakhrt/functions.hpp"

#include <cmath>
#include <stdexcept>

namespace zakhrt {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFourthRootOfTwo = 1.1892071150027210667;  // 2^{1/4}
// Shell sums are evaluated up to this |tau|; beyond it every built-in
// profile is below 1e-300.
constexpr long kShellCutoff = 840;
}  // namespace

AnalyticFunction::AnalyticFunction(FnKind kind, int n, double a) : kind_(kind), n_(n), a_(a) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
}

AnalyticFunction AnalyticFunction::Gaussian(int n) {
  return AnalyticFunction(FnKind::kGaussian, n, 0.0);
}

AnalyticFunction AnalyticFunction::TwoSidedExponential(double a, int n) {
  if (!(a > 0.0)) throw std::invalid_argument("decay rate must be positive");
  return AnalyticFunction(FnKind::kTwoSidedExponential, n, a);
}

AnalyticFunction AnalyticFunction::BoxIndicator(int n) {
  return AnalyticFunction(FnKind::kBoxIndicator, n, 0.0);
}

AnalyticFunction AnalyticFunction::FromSpec(const std::string& kind, double a, int n) {
  if (kind == "gaussian") return Gaussian(n);
  if (kind == "two_sided_exponential") return TwoSidedExponential(a, n);
  if (kind == "box" || kind == "box_indicator") return BoxIndicator(n);
  throw std::invalid_argument("unknown function kind: " + kind);
}

std::string AnalyticFunction::name() const {
  switch (kind_) {
    case FnKind::kGaussian: return "gaussian";
    case FnKind::kTwoSidedExponential: return "two_sided_exponential";
    case FnKind::kBoxIndicator: return "box_indicator";
  }
  return "?";
}

double AnalyticFunction::evaluate1d(double t) const {
  switch (kind_) {
    case FnKind::kGaussian: return kFourthRootOfTwo * std::exp(-kPi * t * t);
    case FnKind::kTwoSidedExponential: return std::exp(-a_ * std::fabs(t));
    case FnKind::kBoxIndicator: return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
  }
  return 0.0;
}

double AnalyticFunction::evaluate(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != n_) throw std::invalid_argument("point dimension mismatch");
  double v = 1.0;
  for (double tk : t) {
    if (!std::isfinite(tk)) throw std::invalid_argument("non-finite evaluation point");
    v *= evaluate1d(tk);
  }
  return v;
}

double AnalyticFunction::norm_l2() const {
  switch (kind_) {
    case FnKind::kGaussian: return 1.0;
    case FnKind::kTwoSidedExponential: return std::pow(1.0 / a_, 0.5 * n_);
    case FnKind::kBoxIndicator: return 1.0;
  }
  return 0.0;
}

double AnalyticFunction::shell_sup(long tau) const {
  if (kind_ == FnKind::kBoxIndicator) return tau == 0 ? 1.0 : 0.0;
  // distance from [tau, tau+1) to the origin
  const double d = tau >= 0 ? static_cast<double>(tau) : static_cast<double>(-tau - 1);
  return evaluate1d(d);
}

double AnalyticFunction::tail_bound(int T) const {
  if (T < 0) throw std::invalid_argument("tail bound needs T >= 0");
  if (kind_ == FnKind::kBoxIndicator) return T == 0 ? 1.0 : 0.0;
  // 1-D: S_out(T) = sum_{|tau| >= T} shell_sup. n-D product form:
  // sum over |tau|_inf >= T of the product = S_full^n - S_in(T)^n.
  CompensatedSum s_in, s_out;
  for (long tau = -kShellCutoff; tau <= kShellCutoff; ++tau) {
    const double s = shell_sup(tau);
    if (std::labs(tau) >= T) {
      s_out.add(s);
    } else {
      s_in.add(s);
    }
  }
  if (n_ == 1) return s_out.value();
  // full^n - s_in^n without cancellation: s_out * sum_k full^k s_in^{n-1-k}
  const double full = s_in.value() + s_out.value();
  double factor = 0.0;
  for (int k = 0; k < n_; ++k) {
    factor += std::pow(full, k) * std::pow(s_in.value(), n_ - 1 - k);
  }
  return s_out.value() * factor;
}

int AnalyticFunction::default_window() const {
  switch (kind_) {
    case FnKind::kGaussian: return 10;
    case FnKind::kTwoSidedExponential: {
      // smallest T with B(T) <= 1e-10 (25 at a=1), clamped to a sane range
      for (int T = 2; T <= 512; ++T) {
        if (tail_bound(T) <= 1e-10) return T;
      }
      return 512;
    }
    case FnKind::kBoxIndicator: return 2;
  }
  return 2;
}

void TFPoint::validate() const {
  if (x.size() != y.size()) throw std::invalid_argument("TF point: x/y dimension mismatch");
  if (x.empty()) throw std::invalid_argument("TF point: empty");
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("TF point: non-finite translation");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw std::invalid_argument("TF point: non-finite modulation");
  }
}

ShiftedFunction::ShiftedFunction(AnalyticFunction f, TFPoint p) : f_(std::move(f)), p_(std::move(p)) {
  p_.validate();
  if (p_.dimension() != f_.dimension()) {
    throw std::invalid_argument("TF point dimension does not match function");
  }
}

cplx ShiftedFunction::evaluate(std::span<const double> t) const {
  const int n = f_.dimension();
  if (static_cast<int>(t.size()) != n) throw std::invalid_argument("point dimension mismatch");
  double buf[8];
  std::vector<double> heap;
  double* arg = buf;
  if (n > 8) {
    heap.resize(static_cast<std::size_t>(n));
    arg = heap.data();
  }
  double dot = 0.0;
  for (int k = 0; k < n; ++k) {
    arg[k] = t[static_cast<std::size_t>(k)] - p_.x[static_cast<std::size_t>(k)];
    dot += p_.y[static_cast<std::size_t>(k)] * t[static_cast<std::size_t>(k)];
  }
  return unit_phase(dot) * f_.evaluate(std::span<const double>(arg, static_cast<std::size_t>(n)));
}

ShiftedFunction apply_tf_shift(const AnalyticFunction& f, const TFPoint& p) {
  return ShiftedFunction(f, p);
}

namespace {

void check_sample_args(int T, int M) {
  if (T <= 0) throw std::invalid_argument("window must be positive");
  if (!is_power_of_two(M)) throw std::invalid_argument("resolution must be a power of two");
}

template <typename Eval>
SampledGrid sample_impl(int n, int T, int M, double tail, const Eval& eval) {
  check_sample_args(T, M);
  SampledGrid g;
  g.n = n;
  g.M = M;
  g.T = T;
  g.tail_bound = tail;
  const std::size_t axis = g.axis_count();
  const std::size_t total = pow_size(axis, n);
  g.values.resize(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::vector<double> t(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < total; ++flat) {
    unflatten(flat, n, axis, idx.data());
    for (int d = 0; d < n; ++d) t[static_cast<std::size_t>(d)] = g.node(idx[static_cast<std::size_t>(d)]);
    g.values[flat] = eval(t);
  }
  return g;
}

}  // namespace

SampledGrid sample(const AnalyticFunction& f, int T, int M) {
  return sample_impl(f.dimension(), T, M, f.tail_bound(T),
                     [&](const std::vector<double>& t) { return cplx(f.evaluate(t), 0.0); });
}

SampledGrid sample(const ShiftedFunction& f, int T, int M) {
  return sample_impl(f.base().dimension(), T, M, f.base().tail_bound(T),
                     [&](const std::vector<double>& t) { return f.evaluate(t); });
}

}  // namespace zakhrt
