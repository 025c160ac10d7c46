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

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "zakhrt/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zakhrt;

namespace {

// Flags override JSON config fields; JSON fields override defaults.
struct ConfigSource {
  json j;  // loaded config file (possibly empty object)

  template <typename T>
  T get(const std::string& key, T fallback) const {
    if (j.contains(key)) return j.at(key).get<T>();
    return fallback;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// tokens may be numbers or strings ("1/2", "sqrt2-1")
std::vector<RealToken> parse_token_array(const json& arr) {
  std::vector<RealToken> out;
  for (const auto& v : arr) {
    if (v.is_string()) {
      out.push_back(parse_real_token(v.get<std::string>()));
    } else {
      RealToken t;
      t.value = v.get<double>();
      out.push_back(t);
    }
  }
  return out;
}

TorusVector torus_from_tokens(const std::vector<RealToken>& tokens) {
  std::vector<double> vals;
  vals.reserve(tokens.size());
  for (const auto& t : tokens) vals.push_back(t.value);
  TorusVector v(vals);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].has_rational) v.set_tag(i, tokens[i].rational);
  }
  return v;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string fn_kind;
  double a = 0.0;
  int n = 0;
  int M = 0;
  int T = 0;
  std::uint64_t seed = 0;

  CLI::Option* config_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* fn_opt = nullptr;
  CLI::Option* a_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* M_opt = nullptr;
  CLI::Option* T_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* cmd) {
    config_opt = cmd->add_option("--config", config_path, "JSON config file");
    out_opt = cmd->add_option("--out", out_dir, "output directory");
    fn_opt = cmd->add_option("--fn", fn_kind, "function kind: gaussian|two_sided_exponential|box");
    a_opt = cmd->add_option("--a", a, "two-sided exponential decay rate");
    n_opt = cmd->add_option("--n", n, "dimension");
    M_opt = cmd->add_option("--M", M, "grid resolution (power of two)");
    T_opt = cmd->add_option("--T", T, "truncation window");
    seed_opt = cmd->add_option("--seed", seed, "RNG seed for randomized sweeps");
  }

  ConfigSource load() const {
    ConfigSource src;
    src.j = json::object();
    if (config_opt->count() > 0) src.j = load_json_file(config_path);
    return src;
  }

  // resolved values (flag > json > default)
  std::string resolve_out(const ConfigSource& src) const {
    if (out_opt->count() > 0) return out_dir;
    return src.get<std::string>("out", ".");
  }
  AnalyticFunction resolve_fn(const ConfigSource& src) const {
    std::string kind = "gaussian";
    double decay = 1.0;
    int dim = 1;
    if (src.j.contains("function")) {
      const json& f = src.j.at("function");
      kind = f.value("kind", kind);
      decay = f.value("a", decay);
      dim = f.value("n", dim);
    }
    if (fn_opt->count() > 0) kind = fn_kind;
    if (a_opt->count() > 0) decay = a;
    if (n_opt->count() > 0) dim = n;
    return AnalyticFunction::FromSpec(kind, decay, dim);
  }
  int resolve_M(const ConfigSource& src, int fallback) const {
    if (M_opt->count() > 0) return M;
    return src.get<int>("M", fallback);
  }
  int resolve_T(const ConfigSource& src, const AnalyticFunction& f) const {
    if (T_opt->count() > 0) return T;
    const int t = src.get<int>("T", 0);
    return t > 0 ? t : f.default_window();
  }
  std::uint64_t resolve_seed(const ConfigSource& src) const {
    if (seed_opt->count() > 0) return seed;
    return src.get<std::uint64_t>("seed", 1);
  }
};

std::string prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
  return dir;
}

int run_zak(const CommonArgs& args) {
  const ConfigSource src = args.load();
  const AnalyticFunction f = args.resolve_fn(src);
  const ZakGridSpec spec{f.dimension(), args.resolve_M(src, f.dimension() == 1 ? 64 : 8),
                         args.resolve_T(src, f)};
  spec.validate();
  const std::string out = prepare_out(args.resolve_out(src));

  const ZakGrid grid = zak_direct(f, spec);
  write_zak_csv(out + "/zak.csv", grid);
  write_modulus_pgm(out + "/zak_mod.pgm", grid);

  const double unit_err = check_unitarity(grid, f);
  const QuasiPeriodicityReport qp = check_quasi_periodicity(f, spec);
  write_json_file(out + "/report.json",
                  json{{"function", f.name()},
                       {"n", spec.n},
                       {"M", spec.M},
                       {"T", spec.T},
                       {"trunc_bound", grid.trunc_bound},
                       {"unitarity_err", unit_err},
                       {"quasi_periodicity",
                        {{"omega_residual", qp.omega_residual}, {"t_residual", qp.t_residual}}},
                       {"versions", {{"toolkit", kToolkitVersion}}}});
  return 0;
}

int run_zeros(const CommonArgs& args, CLI::Option* thr_opt, double thr_flag) {
  const ConfigSource src = args.load();
  const AnalyticFunction f = args.resolve_fn(src);
  const ZakGridSpec spec{f.dimension(), args.resolve_M(src, f.dimension() == 1 ? 128 : 16),
                         args.resolve_T(src, f)};
  spec.validate();
  const std::string out = prepare_out(args.resolve_out(src));

  ZeroCertifyOptions opts;
  opts.scan_threshold = thr_opt->count() > 0 ? thr_flag : src.get<double>("threshold", 0.05);
  opts.target_radius = src.get<double>("zero_target_radius", opts.target_radius);
  opts.exclusion_radius = src.get<double>("exclusion_radius", opts.exclusion_radius);

  const ZeroSetReport report = certify_finite_zero_set(f, spec, opts);
  write_json_file(out + "/zeros.json", zeros_report_json(report));
  return 0;
}

int run_orbit(const CommonArgs& args, CLI::Option* gamma_opt, const std::string& gamma_flag,
              CLI::Option* z0_opt, const std::string& z0_flag, CLI::Option* m_opt,
              std::uint64_t m_flag, CLI::Option* boxes_opt, int boxes_flag, CLI::Option* q_opt,
              std::int64_t q_flag, CLI::Option* h_opt, std::int64_t h_flag) {
  const ConfigSource src = args.load();
  const std::string out = prepare_out(args.resolve_out(src));

  std::vector<RealToken> gtokens;
  if (gamma_opt->count() > 0) {
    for (const auto& part : split(gamma_flag, ',')) gtokens.push_back(parse_real_token(part));
  } else if (src.j.contains("gamma")) {
    gtokens = parse_token_array(src.j.at("gamma"));
  } else {
    throw std::invalid_argument("orbit requires --gamma or a config \"gamma\" entry");
  }
  if (gtokens.size() < 2 || gtokens.size() % 2 != 0) {
    throw std::invalid_argument("gamma must have 2n coordinates");
  }
  const TorusVector gamma = torus_from_tokens(gtokens);

  TorusVector z0(std::vector<double>(gtokens.size(), 0.0));
  if (z0_opt->count() > 0) {
    std::vector<RealToken> ztokens;
    for (const auto& part : split(z0_flag, ',')) ztokens.push_back(parse_real_token(part));
    if (ztokens.size() != gtokens.size()) throw std::invalid_argument("z0 dimension mismatch");
    z0 = torus_from_tokens(ztokens);
  } else if (src.j.contains("z0")) {
    z0 = torus_from_tokens(parse_token_array(src.j.at("z0")));
  }

  const std::uint64_t m = m_opt->count() > 0 ? m_flag : src.get<std::uint64_t>("m", 100000);
  const int boxes = boxes_opt->count() > 0 ? boxes_flag : src.get<int>("boxes", 8);
  const std::int64_t Q = q_opt->count() > 0 ? q_flag : src.get<std::int64_t>("Q", 1000000);
  const std::int64_t H = h_opt->count() > 0 ? h_flag : src.get<std::int64_t>("H", 1000);

  write_orbit_csv(out + "/orbit.csv", z0, gamma, m);
  write_json_file(out + "/classification.json", orbit_class_json(classify_generator(gamma, Q, H)));

  json series = json::array();
  for (std::uint64_t checkpoint = 10; checkpoint < m; checkpoint *= 10) {
    series.push_back(
        {{"m", checkpoint}, {"discrepancy", orbit_discrepancy(z0, gamma, checkpoint, boxes)}});
  }
  series.push_back({{"m", m}, {"discrepancy", orbit_discrepancy(z0, gamma, m, boxes)}});
  write_json_file(out + "/discrepancy.json",
                  json{{"boxes_per_axis", boxes}, {"series", series}});
  return 0;
}

int run_certify(const CommonArgs& args, CLI::Option* lattice_opt, const std::string& lattice_flag,
                CLI::Option* point_opt, const std::string& point_flag) {
  const ConfigSource src = args.load();
  const AnalyticFunction f = args.resolve_fn(src);
  const std::string out = prepare_out(args.resolve_out(src));

  TFSystem system;
  system.n = f.dimension();

  if (lattice_opt->count() > 0) {
    if (system.n != 1) throw std::invalid_argument("--lattice is 1-D; use a config file for n > 1");
    for (const auto& part : split(lattice_flag, ';')) {
      const auto lm = split(part, ',');
      if (lm.size() != 2) throw std::invalid_argument("lattice point must be l,m");
      system.lattice.push_back(LatticePoint{{std::stoi(lm[0])}, {std::stoi(lm[1])}});
    }
  } else if (src.j.contains("lattice")) {
    // rows are either {"l": [...], "m": [...]} or flat [l_1..l_n, m_1..m_n]
    for (const auto& pt : src.j.at("lattice")) {
      if (pt.is_array()) {
        const auto row = pt.get<std::vector<int>>();
        if (row.size() != 2 * static_cast<std::size_t>(system.n)) {
          throw std::invalid_argument("lattice row must have 2n entries");
        }
        const auto half = row.begin() + system.n;
        system.lattice.push_back(LatticePoint{{row.begin(), half}, {half, row.end()}});
      } else {
        system.lattice.push_back(
            LatticePoint{pt.at("l").get<std::vector<int>>(), pt.at("m").get<std::vector<int>>()});
      }
    }
  } else {
    throw std::invalid_argument("certify requires --lattice or a config \"lattice\" entry");
  }

  std::vector<RealToken> xs, ys;
  if (point_opt->count() > 0) {
    if (system.n != 1) throw std::invalid_argument("--point is 1-D; use a config file for n > 1");
    const auto xy = split(point_flag, ',');
    if (xy.size() != 2) throw std::invalid_argument("point must be x,y");
    xs.push_back(parse_real_token(xy[0]));
    ys.push_back(parse_real_token(xy[1]));
  } else if (src.j.contains("point")) {
    xs = parse_token_array(src.j.at("point").at("x"));
    ys = parse_token_array(src.j.at("point").at("y"));
  } else {
    throw std::invalid_argument("certify requires --point or a config \"point\" entry");
  }
  for (const auto& t : xs) system.distinguished.x.push_back(t.value);
  for (const auto& t : ys) system.distinguished.y.push_back(t.value);

  CertifyConfig cfg;
  cfg.M = args.resolve_M(src, system.n == 1 ? 64 : 16);
  cfg.T = args.T_opt->count() > 0 ? args.T : src.get<int>("T", 0);
  cfg.zero_M = src.get<int>("zero_M", 0);  // 0 -> dimension-dependent default
  cfg.Q = src.get<std::int64_t>("Q", 1000000);
  cfg.H = src.get<std::int64_t>("H", system.n == 1 ? 1000 : 30);
  cfg.m_max = src.get<std::uint64_t>("m_max", 100);
  cfg.min_eig_threshold = src.get<double>("min_eig_threshold", cfg.min_eig_threshold);
  cfg.residual_threshold = src.get<double>("residual_threshold", cfg.residual_threshold);
  cfg.zeros.scan_threshold = src.get<double>("zero_scan_threshold", cfg.zeros.scan_threshold);
  cfg.zeros.target_radius = src.get<double>("zero_target_radius", cfg.zeros.target_radius);
  cfg.zeros.exclusion_radius = src.get<double>("exclusion_radius", cfg.zeros.exclusion_radius);

  const IndependenceCertificate cert = certify(f, system, cfg);
  write_json_file(out + "/certificate.json", certificate_json(cert, system, cfg));
  // the verdict is data, not a failure mode
  return 0;
}

int run_identities(const CommonArgs& args, CLI::Option* draws_opt, int draws_flag) {
  const ConfigSource src = args.load();
  const AnalyticFunction f = args.resolve_fn(src);
  const ZakGridSpec spec{f.dimension(), args.resolve_M(src, f.dimension() == 1 ? 32 : 8),
                         args.resolve_T(src, f)};
  spec.validate();
  const std::string out = prepare_out(args.resolve_out(src));

  SweepConfig sweep;
  sweep.draws = draws_opt->count() > 0 ? draws_flag : src.get<int>("draws", 100);
  sweep.seed = args.resolve_seed(src);

  const std::vector<double> id1 = identity1_sweep(f, spec, sweep);
  const std::vector<double> id2 = identity2_sweep(f, spec, sweep);
  const std::vector<double> feq = functional_equation_sweep(f, spec, sweep);
  auto max_of = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  };
  write_json_file(out + "/identities.json",
                  json{{"function", f.name()},
                       {"n", spec.n},
                       {"M", spec.M},
                       {"T", spec.T},
                       {"draws", sweep.draws},
                       {"seed", sweep.seed},
                       {"identity1", {{"max", max_of(id1)}, {"residuals", id1}}},
                       {"identity2", {{"max", max_of(id2)}, {"residuals", id2}}},
                       {"functional_equation", {{"max", max_of(feq)}, {"residuals", feq}}},
                       {"versions", {{"toolkit", kToolkitVersion}}}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zak transform toolkit: covariance identities, zero sets, torus orbits,\n"
               "and linear-independence certificates for lattice + one-point systems"};
  app.require_subcommand(1);

  CLI::App* zak_cmd = app.add_subcommand("zak", "Zak grid, modulus heatmap, unitarity report");
  CLI::App* zeros_cmd = app.add_subcommand("zeros", "locate and certify the zero set of |Zf|");
  CLI::App* orbit_cmd = app.add_subcommand("orbit", "orbit dump, classification, discrepancy");
  CLI::App* certify_cmd = app.add_subcommand("certify", "independence certificate for a system");
  CLI::App* ident_cmd = app.add_subcommand("identities", "randomized identity residual sweeps");

  CommonArgs zak_args, zeros_args, orbit_args, certify_args, ident_args;
  zak_args.attach(zak_cmd);
  zeros_args.attach(zeros_cmd);
  orbit_args.attach(orbit_cmd);
  certify_args.attach(certify_cmd);
  ident_args.attach(ident_cmd);

  double zeros_threshold = 0.05;
  CLI::Option* zeros_thr_opt = zeros_cmd->add_option("--threshold", zeros_threshold, "scan threshold");

  std::string orbit_gamma, orbit_z0;
  std::uint64_t orbit_m = 100000;
  int orbit_boxes = 8;
  std::int64_t orbit_Q = 1000000, orbit_H = 1000;
  CLI::Option* orbit_gamma_opt =
      orbit_cmd->add_option("--gamma", orbit_gamma, "shift, e.g. \"1/2,1/3\" or \"sqrt2-1,sqrt3-1\"");
  CLI::Option* orbit_z0_opt = orbit_cmd->add_option("--z0", orbit_z0, "start point (default 0)");
  CLI::Option* orbit_m_opt = orbit_cmd->add_option("--m", orbit_m, "orbit length");
  CLI::Option* orbit_boxes_opt = orbit_cmd->add_option("--boxes", orbit_boxes, "boxes per axis");
  CLI::Option* orbit_Q_opt = orbit_cmd->add_option("--Q", orbit_Q, "denominator cap");
  CLI::Option* orbit_H_opt = orbit_cmd->add_option("--H", orbit_H, "relation height cap");

  std::string certify_lattice, certify_point;
  CLI::Option* certify_lattice_opt =
      certify_cmd->add_option("--lattice", certify_lattice, "lattice points \"l,m;l,m;...\"");
  CLI::Option* certify_point_opt =
      certify_cmd->add_option("--point", certify_point, "distinguished point \"x,y\"");

  int ident_draws = 100;
  CLI::Option* ident_draws_opt = ident_cmd->add_option("--draws", ident_draws, "number of draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (zak_cmd->parsed()) return run_zak(zak_args);
    if (zeros_cmd->parsed()) return run_zeros(zeros_args, zeros_thr_opt, zeros_threshold);
    if (orbit_cmd->parsed()) {
      return run_orbit(orbit_args, orbit_gamma_opt, orbit_gamma, orbit_z0_opt, orbit_z0,
                       orbit_m_opt, orbit_m, orbit_boxes_opt, orbit_boxes, orbit_Q_opt, orbit_Q,
                       orbit_H_opt, orbit_H);
    }
    if (certify_cmd->parsed()) {
      return run_certify(certify_args, certify_lattice_opt, certify_lattice, certify_point_opt,
                         certify_point);
    }
    if (ident_cmd->parsed()) return run_identities(ident_args, ident_draws_opt, ident_draws);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
