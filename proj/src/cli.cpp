// Copyright 2026 The hyperell Authors.
//
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

#include "hyperell/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "hyperell/arg_s.hpp"
#include "hyperell/extremal.hpp"
#include "hyperell/fq_arith.hpp"
#include "hyperell/lpoly.hpp"
#include "hyperell/quad_char.hpp"

namespace hyperell::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& text, const std::string& key) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError("bad value '" + text + "' for " + key);
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("bad boolean '" + text + "' for " + key);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Extremal command targets: log2sin, sawtooth, bernoulli:n, interval:a:b.
struct ExtremalSpec {
  bool interval = false;
  Target target;
  Interval arc;
};

ExtremalSpec parse_extremal_target(const std::string& text) {
  ExtremalSpec ext;
  if (text == "log2sin") {
    ext.target = Target::log2sin();
  } else if (text == "sawtooth") {
    ext.target = Target::bernoulli(1);
  } else if (text.rfind("bernoulli:", 0) == 0) {
    const int n = parse_number<int>(text.substr(10), "bernoulli index");
    if (n < 0 || n + 1 > BernoulliTable::kMaxIndex) throw ParseError("bernoulli index out of range in '" + text + "'");
    ext.target = Target::bernoulli(n + 1);
  } else if (text.rfind("interval:", 0) == 0) {
    const std::string rest = text.substr(9);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("interval target needs interval:<alpha>:<beta>");
    ext.interval = true;
    ext.arc.alpha = parse_number<double>(rest.substr(0, colon), "interval alpha");
    ext.arc.beta = parse_number<double>(rest.substr(colon + 1), "interval beta");
    const double len = ext.arc.length();
    if (!(len >= 0.0 && len <= 1.0)) throw ParseError("interval length must lie in [0, 1] in '" + text + "'");
  } else {
    throw ParseError("unknown extremal target '" + text + "'");
  }
  return ext;
}

std::ostream* open_or(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty()) return &fallback;
  file.open(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  return &file;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config text form

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "command=" << command << '\n';
  os << "q=" << q << '\n';
  os << "d=" << d << '\n';
  if (!D.empty()) os << "D=" << D << '\n';
  for (const auto& t : targets) os << "target=" << t << '\n';
  os << "side=" << side << '\n';
  os << "N=" << N << '\n';
  for (const auto& p : degree_policies) os << "degree-policy=" << p << '\n';
  for (const auto& m : modes) os << "mode=" << m << '\n';
  os << "sample=" << sample << '\n';
  os << "seed=" << seed << '\n';
  os << "grid=" << grid << '\n';
  os << "extremal-grid=" << extremal_grid << '\n';
  if (!out.empty()) os << "out=" << out << '\n';
  os << "nmax=" << nmax << '\n';
  os << "threads=" << threads << '\n';
  os << "budget=" << budget << '\n';
  os << "interval-method=" << (interval_method ? "true" : "false") << '\n';
  os << "slack=" << num(slack) << '\n';
  return os.str();
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "command") {
      c.command = value;
    } else if (key == "q") {
      c.q = parse_number<std::uint32_t>(value, key);
    } else if (key == "d") {
      c.d = parse_number<int>(value, key);
    } else if (key == "D") {
      c.D = value;
    } else if (key == "target") {
      c.targets.push_back(value);
    } else if (key == "side") {
      c.side = value;
    } else if (key == "N") {
      c.N = parse_number<int>(value, key);
    } else if (key == "degree-policy") {
      c.degree_policies.push_back(value);
    } else if (key == "mode") {
      c.modes.push_back(value);
    } else if (key == "sample") {
      c.sample = value;
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "grid") {
      c.grid = parse_number<int>(value, key);
    } else if (key == "extremal-grid") {
      c.extremal_grid = parse_number<int>(value, key);
    } else if (key == "out") {
      c.out = value;
    } else if (key == "nmax") {
      c.nmax = parse_number<int>(value, key);
    } else if (key == "threads") {
      c.threads = parse_number<int>(value, key);
    } else if (key == "budget") {
      c.budget = parse_number<std::uint64_t>(value, key);
    } else if (key == "interval-method") {
      c.interval_method = parse_bool(value, key);
    } else if (key == "slack") {
      c.slack = parse_number<double>(value, key);
    } else {
      throw ParseError("unknown config key '" + key + "' on line " + std::to_string(lineno));
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return RunConfig::from_text(ss.str());
}

// ---------------------------------------------------------------------------
// Validation

void validate(const RunConfig& c) {
  if (c.q < 3 || c.q % 2 == 0 || !is_prime_u64(c.q)) {
    throw ConfigError("q must be an odd prime, got " + std::to_string(c.q));
  }
  if (c.command == "lpoly") {
    if (c.D.empty()) throw ConfigError("lpoly needs a polynomial D");
    const auto D = parse_monic(Field(c.q), c.D);
    if (D.degree() % 2 == 0) throw ConfigError("D must have odd degree, got " + std::to_string(D.degree()));
    if (!is_squarefree(D)) throw ConfigError("D must be squarefree");
  } else if (c.command == "scan") {
    if (c.d < 3 || c.d % 2 == 0) throw ConfigError("scan needs odd d >= 3, got " + std::to_string(c.d));
    if (c.grid < 1024) throw ConfigError("grid must be at least 1024");
    if (c.threads < 0) throw ConfigError("threads must be nonnegative");
    if (!(c.slack >= 0.0)) throw ConfigError("slack must be nonnegative");
    (void)to_scan_config(c);
  } else if (c.command == "extremal") {
    if (c.targets.size() != 1) throw ConfigError("extremal takes exactly one target");
    const auto ext = parse_extremal_target(c.targets.front());
    (void)parse_side(c.side);
    if (c.N < 0 || c.N > kMaxDegree) throw ConfigError("N must lie in 0.." + std::to_string(kMaxDegree));
    if (c.extremal_grid != 0 && c.extremal_grid < 40 * (c.N + 1)) {
      throw ConfigError("extremal-grid must be 0 or at least 40 (N+1)");
    }
    if (!ext.interval && ext.target.kind == Target::Kind::log2sin && parse_side(c.side) == Side::minorant) {
      throw ConfigError("log2sin is unbounded below; only the majorant exists");
    }
  } else if (c.command == "constants") {
    if (c.nmax < 1 || c.nmax > BernoulliTable::kMaxIndex - 1) throw ConfigError("nmax must lie in 1..12");
  } else {
    throw ConfigError("unknown command '" + c.command + "'");
  }
}

ScanConfig to_scan_config(const RunConfig& c) {
  ScanConfig s;
  s.q = c.q;
  s.d = c.d;
  if (!c.targets.empty()) {
    s.targets.clear();
    for (const auto& t : c.targets) s.targets.push_back(parse_bound_target(t));
  }
  if (!c.degree_policies.empty()) {
    s.policies.clear();
    for (const auto& p : c.degree_policies) s.policies.push_back(parse_degree_policy(p));
  }
  if (!c.modes.empty()) {
    s.modes.clear();
    for (const auto& m : c.modes) s.modes.push_back(parse_bound_mode(m));
  }
  s.sample = parse_sample(c.sample);
  s.seed = c.seed;
  s.grid_size = c.grid;
  s.budget = c.budget;
  s.threads = c.threads;
  s.interval_method = c.interval_method;
  s.slack = c.slack;
  return s;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_lpoly(const RunConfig& c, std::ostream& out) {
  const Field field(c.q);
  const Character chi(parse_monic(field, c.D));
  const LPolynomial L = compute_lpolynomial(chi);
  if (!has_functional_equation_symmetry(L)) throw ConsistencyError("functional equation fails for " + L.D);
  const ZeroAngles zeros = find_zero_angles(L);
  nlohmann::json j = to_json(L);
  j["theta"] = zeros.theta;
  j["residual"] = zeros.residual;
  j["fe_symmetry"] = "exact";
  j["rh_radius_err"] = rh_radius_error(L);
  out << j.dump(2) << '\n';
  return kSuccess;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ScanResult result = ensemble_scan(to_scan_config(c));
  const std::string csv = to_csv(result);
  const auto man = manifest(result);
  if (c.out.empty()) {
    out << csv;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + c.out + "'");
    f << csv;
    std::ofstream m(c.out + ".manifest.json", std::ios::binary);
    if (!m) throw ConfigError("cannot open manifest file '" + c.out + ".manifest.json'");
    m << man.dump(2) << '\n';
  }
  if (result.truncated) err << "warning: scan truncated at " << result.d_count << " polynomials\n";
  if (!result.violations.empty()) {
    for (const auto& v : result.violations) err << v << '\n';
    return kSoundnessViolation;
  }
  return kSuccess;
}

int cmd_extremal(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto ext = parse_extremal_target(c.targets.front());
  nlohmann::json j;
  std::ofstream file;
  bool ok = true;
  if (ext.interval) {
    const IntervalPolys polys = interval_polys(ext.arc, c.N, c.extremal_grid);
    const double oracle = 1.0 / (c.N + 1);
    double max_coeff = 0.0;
    for (int k = 1; k <= c.N; ++k) {
      max_coeff = std::max({max_coeff, std::abs(polys.majorant.coefficient(k)), std::abs(polys.minorant.coefficient(k))});
    }
    const double gap_up = std::abs(polys.majorant_gap - oracle) / oracle;
    const double gap_lo = std::abs(polys.minorant_gap - oracle) / oracle;
    ok = gap_up <= 5e-3 && gap_lo <= 5e-3 && max_coeff <= interval_coefficient_bound();
    j = {{"target", c.targets.front()},
         {"N", c.N},
         {"alpha", ext.arc.alpha},
         {"beta", ext.arc.beta},
         {"oracle_gap", oracle},
         {"majorant_gap", polys.majorant_gap},
         {"minorant_gap", polys.minorant_gap},
         {"relative_gap", std::max(gap_up, gap_lo)},
         {"certified_margin", polys.certified_margin},
         {"max_abs_coefficient", max_coeff},
         {"coefficient_bound", interval_coefficient_bound()},
         {"within_tolerance", ok},
         {"majorant", to_json(polys.majorant)},
         {"minorant", to_json(polys.minorant)}};
    if (!c.out.empty()) {
      auto* os = open_or(c.out, file, out);
      const auto a_up = polys.majorant.cos_coefficients();
      const auto b_up = polys.majorant.sin_coefficients();
      const auto a_lo = polys.minorant.cos_coefficients();
      const auto b_lo = polys.minorant.sin_coefficients();
      *os << "k,minorant_cos,minorant_sin,majorant_cos,majorant_sin\n";
      for (int k = 0; k <= c.N; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        *os << k << ',' << num(a_lo[ku]) << ',' << num(k ? b_lo[ku - 1] : 0.0) << ',' << num(a_up[ku]) << ','
            << num(k ? b_up[ku - 1] : 0.0) << '\n';
      }
    }
  } else {
    const Side side = parse_side(c.side);
    const OneSidedResult r = construct_one_sided(ext.target, side, c.N, c.extremal_grid);
    const CoefficientReport rep = verify_coefficient_bounds(r);
    const double rel = std::abs(r.achieved_mean - r.oracle_mean) / std::abs(r.oracle_mean);
    ok = rel <= 5e-3 && r.repair_epsilon <= 1e-4 * std::abs(r.oracle_mean) && r.certified_margin >= -1e-12;
    j = {{"target", c.targets.front()},
         {"side", to_string(side)},
         {"N", c.N},
         {"achieved_mean", r.achieved_mean},
         {"oracle_mean", r.oracle_mean},
         {"lp_mean", r.lp_mean},
         {"relative_gap", rel},
         {"repair_epsilon", r.repair_epsilon},
         {"certified_margin", r.certified_margin},
         {"cutting_rounds", r.cutting_rounds},
         {"lp_points", r.lp_points},
         {"fitted_constant", rep.fitted_constant},
         {"worst_coefficient_excursion", rep.worst_excursion},
         {"within_tolerance", ok},
         {"poly", to_json(r.poly)}};
    if (!c.out.empty()) {
      auto* os = open_or(c.out, file, out);
      const auto a = r.poly.cos_coefficients();
      const auto b = r.poly.sin_coefficients();
      *os << "k,cos,sin\n";
      for (int k = 0; k <= c.N; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        *os << k << ',' << num(a[ku]) << ',' << num(k ? b[ku - 1] : 0.0) << '\n';
      }
    }
  }
  out << j.dump(2) << '\n';
  return ok ? kSuccess : kCertificationFailure;
}

int cmd_constants(const RunConfig& c, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = open_or(c.out, file, out);
  *os << "n,M_n_plus_1,m_n_plus_1,A_minus,A_plus,C_minus,C_plus,relation,lehmer_bracket\n";
  for (int n = 1; n <= c.nmax; ++n) {
    const auto e = bernoulli_extrema(n + 1);
    const auto A = constants_A(n);
    const auto C = constants_C(n);
    std::string relation = "other";
    if (std::abs(A.minus - C.minus) <= 1e-10 && std::abs(A.plus - C.plus) <= 1e-10) {
      relation = "exact match";
    } else if (A.minus < C.minus && A.plus < C.plus) {
      relation = "A<C";
    }
    std::string bracket = "n/a";
    if (n % 2 == 0) {
      const double hi = 1.0 / (kPi * std::pow(2.0, n + 1));
      const double lo = (1.0 - std::pow(3.0, -n)) * hi;
      const bool inside = lo < A.minus && A.minus < hi && lo < A.plus && A.plus < hi;
      bracket = inside ? "inside" : "outside";
    }
    *os << n << ',' << num(e.max) << ',' << num(e.min) << ',' << num(A.minus) << ',' << num(A.plus) << ','
        << num(C.minus) << ',' << num(C.plus) << ',' << relation << ',' << bracket << '\n';
  }
  return kSuccess;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.command == "lpoly") return cmd_lpoly(config, out);
    if (config.command == "scan") return cmd_scan(config, out, err);
    if (config.command == "extremal") return cmd_extremal(config, out, err);
    return cmd_constants(config, out);
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << " (worst point " << e.worst_point() << ", violation "
        << e.worst_violation() << ")\n";
    return kCertificationFailure;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kCertificationFailure;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kConsistencyError;
  } catch (const RootIsolationError& e) {
    err << "root isolation failure: " << e.what() << '\n';
    return kConsistencyError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

// ---------------------------------------------------------------------------
// argv

int main_entry(int argc, char** argv) {
  CLI::App app{"Quadratic L-functions over F_q[x]: zeros, argument bounds and extremal polynomials", "hyperell"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> bindings;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    auto bind = [&](CLI::Option* opt, std::function<void(RunConfig&)> apply) { bindings.emplace_back(opt, apply); };
    bind(sub->add_option("--q", flags.q, "odd prime field size"), [&](RunConfig& c) { c.q = flags.q; });
    bind(sub->add_option("--d", flags.d, "degree of D"), [&](RunConfig& c) { c.d = flags.d; });
    bind(sub->add_option("-D,--D,--poly", flags.D, "polynomial, e.g. x^5+x+1"), [&](RunConfig& c) { c.D = flags.D; });
    bind(sub->add_option("--target", flags.targets, "target (repeatable)"),
         [&](RunConfig& c) { c.targets = flags.targets; });
    bind(sub->add_option("--side", flags.side, "majorant or minorant"), [&](RunConfig& c) { c.side = flags.side; });
    bind(sub->add_option("--N", flags.N, "trigonometric degree"), [&](RunConfig& c) { c.N = flags.N; });
    bind(sub->add_option("--degree-policy", flags.degree_policies, "formula|exhaustive[:cap]|fixed:N (repeatable)"),
         [&](RunConfig& c) { c.degree_policies = flags.degree_policies; });
    bind(sub->add_option("--mode", flags.modes, "weil|exact (repeatable)"), [&](RunConfig& c) { c.modes = flags.modes; });
    bind(sub->add_option("--sample", flags.sample, "all or random:m"), [&](RunConfig& c) { c.sample = flags.sample; });
    bind(sub->add_option("--seed", flags.seed, "sampling seed"), [&](RunConfig& c) { c.seed = flags.seed; });
    bind(sub->add_option("--grid", flags.grid, "theta grid size"), [&](RunConfig& c) { c.grid = flags.grid; });
    bind(sub->add_option("--extremal-grid", flags.extremal_grid, "LP grid points (0: 40(N+1))"),
         [&](RunConfig& c) { c.extremal_grid = flags.extremal_grid; });
    bind(sub->add_option("--out", flags.out, "output path"), [&](RunConfig& c) { c.out = flags.out; });
    bind(sub->add_option("--nmax", flags.nmax, "largest n for constants"), [&](RunConfig& c) { c.nmax = flags.nmax; });
    bind(sub->add_option("--threads", flags.threads, "worker threads (0: all cores)"),
         [&](RunConfig& c) { c.threads = flags.threads; });
    bind(sub->add_option("--budget", flags.budget, "maximum polynomials per scan"),
         [&](RunConfig& c) { c.budget = flags.budget; });
    bind(sub->add_option("--interval-method", flags.interval_method, "also run the symmetric-interval bound"),
         [&](RunConfig& c) { c.interval_method = flags.interval_method; });
    bind(sub->add_option("--slack", flags.slack, "soundness slack"), [&](RunConfig& c) { c.slack = flags.slack; });
  };
  for (const char* name : {"lpoly", "scan", "extremal", "constants"}) {
    static const std::map<std::string, std::string> help{
        {"lpoly", "L-polynomial and zero angles of one D (JSON)"},
        {"scan", "ensemble scan of bounds versus empirical extrema (CSV + manifest)"},
        {"extremal", "one-sided trigonometric polynomial with certification (JSON, CSV with --out)"},
        {"constants", "table of M, m, A and C constants (CSV)"}};
    common(app.add_subcommand(name, help.at(name)));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  config.command = app.get_subcommands().front()->get_name();
  for (auto& [opt, apply] : bindings) {
    if (opt->count() > 0) apply(config);
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace hyperell::cli
