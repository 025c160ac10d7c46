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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "zakhrt/io.hpp"

using namespace zakhrt;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary | std::ios::in : std::ios::in);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("zakhrt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string operator/(const char* name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("real token parsing") {
  const RealToken half = parse_real_token("1/2");
  CHECK(half.value == 0.5);
  CHECK(half.has_rational);
  CHECK(half.rational.p == 1);
  CHECK(half.rational.q == 2);

  const RealToken reduced = parse_real_token("2/4");
  CHECK(reduced.rational.p == 1);
  CHECK(reduced.rational.q == 2);

  const RealToken neg = parse_real_token("-1/3");
  CHECK(neg.rational.p == -1);
  CHECK(neg.rational.q == 3);

  CHECK(parse_real_token("sqrt2").value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(parse_real_token("sqrt2-1").value ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(parse_real_token("sqrt3+2").value ==
        doctest::Approx(std::sqrt(3.0) + 2.0).epsilon(1e-15));
  CHECK(parse_real_token("0.25").value == 0.25);
  CHECK_FALSE(parse_real_token("0.25").has_rational);

  CHECK_THROWS_AS(parse_real_token(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_real_token("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real_token("sqrt2*3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real_token("abc"), std::invalid_argument);
}

TEST_CASE("zak csv format and round trip") {
  TempDir tmp;
  const auto box = AnalyticFunction::BoxIndicator(1);
  const ZakGrid grid = zak_direct(box, {1, 2, 1});
  const std::string path = tmp / "zak.csv";
  write_zak_csv(path, grid);
  const std::string text = slurp(path);

  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t_1,omega_1,re,im");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    // 17-significant-digit floats round-trip exactly
    double t, w, re, im;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &w, &re, &im) == 4);
    CHECK(re == 1.0);
    CHECK(im == 0.0);
  }
  CHECK(rows == 4);
}

TEST_CASE("csv floats survive the round trip bit-exactly") {
  TempDir tmp;
  const auto g = AnalyticFunction::Gaussian(1);
  const ZakGrid grid = zak_direct(g, {1, 4, 10});
  const std::string path = tmp / "zak.csv";
  write_zak_csv(path, grid);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  std::string line;
  std::size_t flat = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, w, re, im;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &w, &re, &im) == 4);
    CHECK(re == grid.values[flat].real());
    CHECK(im == grid.values[flat].imag());
    ++flat;
  }
  CHECK(flat == grid.values.size());
}

TEST_CASE("pgm heatmap") {
  TempDir tmp;
  SUBCASE("box gives a constant 65535 image") {
    const auto box = AnalyticFunction::BoxIndicator(1);
    const ZakGrid grid = zak_direct(box, {1, 4, 1});
    const std::string path = tmp / "mod.pgm";
    write_modulus_pgm(path, grid);
    const std::string bytes = slurp(path, true);
    const std::string header = "P5\n4 4\n65535\n";
    REQUIRE(bytes.substr(0, header.size()) == header);
    REQUIRE(bytes.size() == header.size() + 2 * 16);
    for (std::size_t i = header.size(); i < bytes.size(); ++i) {
      CHECK(static_cast<unsigned char>(bytes[i]) == 0xFF);
    }
  }
  SUBCASE("byte-identical across writes") {
    const auto g = AnalyticFunction::Gaussian(1);
    const ZakGrid grid = zak_direct(g, {1, 8, 10});
    const std::string p1 = tmp / "a.pgm";
    const std::string p2 = tmp / "b.pgm";
    write_modulus_pgm(p1, grid);
    write_modulus_pgm(p2, grid);
    CHECK(slurp(p1, true) == slurp(p2, true));
  }
}

TEST_CASE("orbit csv") {
  TempDir tmp;
  const std::string path = tmp / "orbit.csv";
  write_orbit_csv(path, TorusVector{0.0, 0.0}, TorusVector{0.5, 0.25}, 4);
  std::istringstream lines(slurp(path));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,z_1,z_2");
  std::getline(lines, line);
  CHECK(line == "0,0,0");
  std::getline(lines, line);
  CHECK(line == "1,0.5,0.25");
  std::getline(lines, line);
  CHECK(line == "2,0,0.5");
}

TEST_CASE("json writers carry the contract fields") {
  const auto tse = AnalyticFunction::TwoSidedExponential(1.0, 1);
  const ZeroSetReport rep = certify_finite_zero_set(tse, {1, 64, 25});
  const json zj = zeros_report_json(rep);
  CHECK(zj.contains("zeros"));
  CHECK(zj.contains("off_zero_lower_bound"));
  CHECK(zj["grid"]["M"] == 64);
  CHECK(zj["zeros"].size() == 1);
  CHECK(zj["zeros"][0].contains("location"));
  CHECK(zj["zeros"][0].contains("residual"));
  CHECK(zj["zeros"][0].contains("radius"));

  const OrbitClass finite = classify_generator(TorusVector{0.5, 1.0 / 3.0}, 100, 10);
  const json fj = orbit_class_json(finite);
  CHECK(fj["kind"] == "finite");
  CHECK(fj["order"] == 6);
  CHECK(fj["rational_dimension"] == 1);

  const OrbitClass dense =
      classify_generator(TorusVector{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}, 100, 100);
  const json dj = orbit_class_json(dense);
  CHECK(dj["kind"] == "dense_up_to_bound");
  CHECK(dj["search_bound"] == 100);
}

TEST_CASE("certificate json is reproducible and round-trips") {
  TempDir tmp;
  const auto g = AnalyticFunction::Gaussian(1);
  TFSystem s;
  s.n = 1;
  s.lattice = {LatticePoint{{0}, {0}}, LatticePoint{{1}, {0}}};
  s.distinguished = TFPoint{{std::sqrt(2.0)}, {std::sqrt(3.0)}};
  CertifyConfig cfg;
  cfg.M = 32;
  cfg.zero_M = 64;
  const IndependenceCertificate cert = certify(g, s, cfg);
  const json j1 = certificate_json(cert, s, cfg);
  const IndependenceCertificate cert2 = certify(g, s, cfg);
  const json j2 = certificate_json(cert2, s, cfg);
  CHECK(j1.dump(2) == j2.dump(2));

  CHECK(j1["system"]["n"] == 1);
  CHECK(j1["system"]["gamma"].size() == 2);
  CHECK(j1.contains("gram_min_eig"));
  CHECK(j1.contains("ls_residual"));
  CHECK(j1.contains("feq_residual"));
  CHECK(j1.contains("orbit"));
  CHECK(j1.contains("zeros"));
  CHECK(j1.contains("verdict"));
  CHECK(j1.contains("config"));
  CHECK(j1.contains("versions"));

  const std::string path = tmp / "cert.json";
  write_json_file(path, j1);
  const json back = load_json_file(path);
  CHECK(back == j1);
}

TEST_CASE("io error surfaces as IoError") {
  const auto box = AnalyticFunction::BoxIndicator(1);
  const ZakGrid grid = zak_direct(box, {1, 2, 1});
  CHECK_THROWS_AS(write_zak_csv("/nonexistent_dir_zakhrt/zak.csv", grid), IoError);
  CHECK_THROWS_AS(load_json_file("/nonexistent_dir_zakhrt/config.json"), IoError);
}
