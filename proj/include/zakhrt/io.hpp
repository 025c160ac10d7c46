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

#ifndef ZAKHRT_IO_HPP_
#define ZAKHRT_IO_HPP_

#include <nlohmann/json_fwd.hpp>
#include <stdexcept>
#include <string>

#include "zakhrt/certify.hpp"

namespace zakhrt {

inline constexpr const char* kToolkitVersion = "0.1.0";

// IO failures map to exit code 3; config problems (std::invalid_argument)
// map to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A real number from config text: "p/q" carries an exact rational tag,
// "sqrtK" (optionally "sqrtK+c" / "sqrtK-c" with integer c) covers the
// quadratic irrationals used throughout, anything else parses as a
// decimal.
struct RealToken {
  double value = 0.0;
  bool has_rational = false;
  Rational rational;
};
RealToken parse_real_token(const std::string& text);

// ---- file emission ----

// CSV `t_1,..,t_n,omega_1,..,omega_n,re,im`, rows in grid storage order,
// floats at 17 significant digits.
void write_zak_csv(const std::string& path, const ZakGrid& grid);

// Binary PGM (P5), 16-bit big-endian, linear map [0, max |F|] -> [0, 65535],
// row-major with t fastest (rows are omega indices).
void write_modulus_pgm(const std::string& path, const ZakGrid& grid);

// CSV `m,z_1,..,z_2n` of the forward orbit.
void write_orbit_csv(const std::string& path, const TorusVector& z0, const TorusVector& gamma,
                     std::uint64_t m);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json_file(const std::string& path);

// ---- JSON records ----

nlohmann::json zeros_report_json(const ZeroSetReport& report);
nlohmann::json orbit_class_json(const OrbitClass& oc);
nlohmann::json certificate_json(const IndependenceCertificate& cert, const TFSystem& system,
                                const CertifyConfig& config);

}  // namespace zakhrt

#endif  // ZAKHRT_IO_HPP_
