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

#include "zakhrt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "zakhrt/kernels.hpp"

namespace zakhrt {

using nlohmann::json;

RealToken parse_real_token(const std::string& text) {
  RealToken tok;
  if (text.empty()) throw std::invalid_argument("empty number");

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::size_t p_end = 0, q_end = 0;
    const long long p = std::stoll(text.substr(0, slash), &p_end);
    const long long q = std::stoll(text.substr(slash + 1), &q_end);
    if (p_end != slash || q_end != text.size() - slash - 1 || q == 0) {
      throw std::invalid_argument("bad rational: " + text);
    }
    tok.rational = Rational::reduced(p, q);
    tok.has_rational = true;
    tok.value = tok.rational.value();
    return tok;
  }

  if (text.rfind("sqrt", 0) == 0) {
    std::size_t pos = 4;
    std::size_t used = 0;
    const long long k = std::stoll(text.substr(pos), &used);
    if (k < 0) throw std::invalid_argument("bad sqrt argument: " + text);
    pos += used;
    double v = std::sqrt(static_cast<double>(k));
    if (pos < text.size()) {
      const char op = text[pos];
      if (op != '+' && op != '-') throw std::invalid_argument("bad expression: " + text);
      const long long c = std::stoll(text.substr(pos + 1), &used);
      if (pos + 1 + used != text.size()) throw std::invalid_argument("bad expression: " + text);
      v += (op == '+' ? 1.0 : -1.0) * static_cast<double>(c);
    }
    tok.value = v;
    return tok;
  }

  std::size_t used = 0;
  tok.value = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number: " + text);
  return tok;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_zak_csv(const std::string& path, const ZakGrid& grid) {
  std::ofstream out = open_out(path, false);
  const int n = grid.spec.n;
  for (int d = 1; d <= n; ++d) out << "t_" << d << ",";
  for (int d = 1; d <= n; ++d) out << "omega_" << d << ",";
  out << "re,im\n";
  const std::size_t M = grid.spec.axis_size();
  std::vector<std::size_t> digits(static_cast<std::size_t>(2 * n));
  for (std::size_t flat = 0; flat < grid.values.size(); ++flat) {
    unflatten(flat, 2 * n, M, digits.data());
    for (int d = 0; d < 2 * n; ++d) {
      out << fmt17(static_cast<double>(digits[static_cast<std::size_t>(d)]) / grid.spec.M) << ",";
    }
    out << fmt17(grid.values[flat].real()) << "," << fmt17(grid.values[flat].imag()) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_modulus_pgm(const std::string& path, const ZakGrid& grid) {
  const std::vector<double> mod = modulus_grid(grid);
  const std::size_t side = pow_size(grid.spec.axis_size(), grid.spec.n);
  const double maxv = std::max(0.0, kernels::active().vmax(mod.data(), mod.size()));

  std::ofstream out = open_out(path, true);
  out << "P5\n" << side << " " << side << "\n65535\n";
  // rows: omega (k-flat), columns: t (i-flat); storage is t-major
  std::string row(2 * side, '\0');
  for (std::size_t k = 0; k < side; ++k) {
    for (std::size_t i = 0; i < side; ++i) {
      const double v = mod[i * side + k];
      const double scaled = maxv > 0.0 ? v / maxv * 65535.0 : 0.0;
      const auto pix = static_cast<unsigned>(std::lround(scaled));
      row[2 * i] = static_cast<char>((pix >> 8) & 0xFF);
      row[2 * i + 1] = static_cast<char>(pix & 0xFF);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_orbit_csv(const std::string& path, const TorusVector& z0, const TorusVector& gamma,
                     std::uint64_t m) {
  std::ofstream out = open_out(path, false);
  out << "m";
  for (int d = 1; d <= z0.dim(); ++d) out << ",z_" << d;
  out << "\n";
  for (std::uint64_t j = 0; j < m; ++j) {
    const TorusVector z = advance(z0, gamma, j);
    out << j;
    for (int d = 0; d < z.dim(); ++d) out << "," << fmt17(z[static_cast<std::size_t>(d)]);
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out = open_out(path, false);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

json zeros_report_json(const ZeroSetReport& report) {
  json zeros = json::array();
  for (const auto& z : report.zeros) {
    zeros.push_back({{"location", z.location}, {"residual", z.residual}, {"radius", z.radius}});
  }
  return json{
      {"zeros", zeros},
      {"off_zero_lower_bound", report.off_zero_lower_bound},
      {"grid", {{"n", report.grid.n}, {"M", report.grid.M}, {"T", report.grid.T}}},
      {"accept_threshold", report.accept_threshold},
      {"refinement_failures", report.refinement_failures},
      {"candidate_overflow", report.candidate_overflow},
      {"claims_finite", report.claims_finite},
  };
}

json orbit_class_json(const OrbitClass& oc) {
  json j{{"kind", orbit_kind_name(oc.kind)}};
  if (oc.kind == OrbitKind::kFinite) j["order"] = oc.order;
  if (oc.kind == OrbitKind::kInfiniteNondense) j["relation"] = oc.relation;
  if (oc.kind == OrbitKind::kDenseUpToBound) j["search_bound"] = oc.search_bound;
  if (oc.rational_dimension > 0) {
    j["rational_dimension"] = oc.rational_dimension;
  } else {
    j["rational_dimension"] = nullptr;
  }
  return j;
}

json certificate_json(const IndependenceCertificate& cert, const TFSystem& system,
                      const CertifyConfig& config) {
  // lattice rows are flat (l_1..l_n, m_1..m_n); distinguished is (x..., y...)
  json lattice = json::array();
  for (const auto& pt : system.lattice) {
    std::vector<int> row(pt.l);
    row.insert(row.end(), pt.m.begin(), pt.m.end());
    lattice.push_back(row);
  }
  std::vector<double> distinguished(system.distinguished.x);
  distinguished.insert(distinguished.end(), system.distinguished.y.begin(),
                       system.distinguished.y.end());
  const TorusVector gamma = system.gamma();
  json coeffs = json::array();
  for (const cplx& c : cert.coefficients) coeffs.push_back({{"re", c.real()}, {"im", c.imag()}});

  json j{
      {"system",
       {{"n", system.n},
        {"lattice", lattice},
        {"distinguished", distinguished},
        {"gamma", std::vector<double>(gamma.coords().begin(), gamma.coords().end())}}},
      {"gram_min_eig", cert.gram_min_eig},
      {"ls_residual", cert.ls_residual},
      {"feq_residual", cert.feq_residual},
      {"coefficients", coeffs},
      {"negligible_coefficients", cert.negligible_coefficients},
      {"orbit", orbit_class_json(cert.orbit)},
      {"verdict", verdict_name(cert.verdict)},
      {"notes", cert.notes},
      {"config",
       {{"M", config.M},
        {"T", config.T},
        {"zero_M", config.zero_M},
        {"Q", config.Q},
        {"H", config.H},
        {"m_max", config.m_max},
        {"min_eig_threshold", config.min_eig_threshold},
        {"residual_threshold", config.residual_threshold},
        {"zero_scan_threshold", config.zeros.scan_threshold},
        {"zero_target_radius", config.zeros.target_radius},
        {"exclusion_radius", config.zeros.exclusion_radius}}},
      {"versions", {{"toolkit", kToolkitVersion}}},
  };
  if (cert.zeros_attempted) {
    j["zeros"] = zeros_report_json(cert.zeros);
  } else {
    j["zeros"] = nullptr;
  }
  if (cert.has_witness) {
    j["witness"] = {{"zero", cert.witness.zero},
                    {"m", cert.witness.m},
                    {"point", cert.witness.point},
                    {"value", cert.witness.value}};
  }
  return j;
}

}  // namespace zakhrt
