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

#include "hyperell/boundlab.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#ifndef HYPERELL_GIT_DESCRIBE
#define HYPERELL_GIT_DESCRIBE "unknown"
#endif

namespace hyperell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double wrap(double x) { return x - std::floor(x); }

double log_base(double x, double q) { return std::log(x) / std::log(q); }

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError("malformed " + what + " '" + text + "'");
  return v;
}

template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

Side opposite(Side s) { return s == Side::majorant ? Side::minorant : Side::majorant; }

double weight(const BoundContext& ctx, int k, BoundMode mode) {
  if (mode == BoundMode::weil) return std::pow(static_cast<double>(ctx.L.q), std::abs(k) / 2.0);
  return ctx.abs_power_sums.at(static_cast<std::size_t>(std::abs(k)));
}

struct Terms {
  double main = 0.0;
  double tail = 0.0;
};

// Interval polynomial coefficients for I = [-t, t], 0 <= t <= 1/2; returns
// the halved main and tail terms of the bound on S_0.
Terms interval_terms(const BoundContext& ctx, double t, int N, Side side, BoundMode mode, ExtremalCache& cache) {
  const auto saw = cache.get(Target::bernoulli(1), side, N);
  const TrigPoly T = (saw->poly.reflected().shifted(-t) + saw->poly.shifted(t)).plus_constant(2.0 * t);
  const int g = ctx.genus();
  Terms out;
  out.main = 0.5 * (-4.0 * g * t + 2.0 * g * T.mean());
  for (int k = 1; k <= N; ++k) out.tail += std::abs(T.coefficient(k)) * weight(ctx, k, mode);
  return out;
}

double interval_bound(const BoundContext& ctx, double theta, int N, Side side, BoundMode mode, ExtremalCache& cache) {
  const double t = wrap(theta);
  if (t > 0.5) return -interval_bound(ctx, 1.0 - t, N, opposite(side), mode, cache);
  const Terms terms = interval_terms(ctx, t, N, side, mode, cache);
  return side == Side::majorant ? terms.main + terms.tail : terms.main - terms.tail;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tags

std::string BoundTarget::tag() const { return kind == Kind::log_modulus ? "logmod" : "s:" + std::to_string(n); }

BoundTarget parse_bound_target(const std::string& text) {
  if (text == "logmod" || text == "log_modulus") return BoundTarget::log_modulus();
  if (text.rfind("s:", 0) == 0) {
    const int n = parse_int(text.substr(2), "target order");
    if (n < 0 || n > BernoulliTable::kMaxIndex - 1) throw ParseError("target order out of range in '" + text + "'");
    return BoundTarget::s(n);
  }
  throw ParseError("unknown target '" + text + "' (expected logmod or s:<n>)");
}

std::string to_string(BoundMode mode) { return mode == BoundMode::weil ? "weil" : "exact"; }

BoundMode parse_bound_mode(const std::string& text) {
  if (text == "weil") return BoundMode::weil;
  if (text == "exact" || text == "exact-power-sum") return BoundMode::exact;
  throw ParseError("unknown bound mode '" + text + "'");
}

std::string DegreePolicy::tag() const {
  switch (kind) {
    case Kind::formula:
      return "formula";
    case Kind::exhaustive:
      return N == kDefaultExhaustiveCap ? "exhaustive" : "exhaustive:" + std::to_string(N);
    case Kind::fixed:
      return "fixed:" + std::to_string(N);
  }
  return "formula";
}

DegreePolicy parse_degree_policy(const std::string& text) {
  if (text == "formula") return {DegreePolicy::Kind::formula, 0};
  if (text == "exhaustive") return {DegreePolicy::Kind::exhaustive, kDefaultExhaustiveCap};
  auto bounded = [&](const std::string& rest) {
    const int n = parse_int(rest, "degree");
    if (n < 0 || n > kMaxDegree) throw ParseError("degree out of range in '" + text + "'");
    return n;
  };
  if (text.rfind("exhaustive:", 0) == 0) return {DegreePolicy::Kind::exhaustive, bounded(text.substr(11))};
  if (text.rfind("fixed:", 0) == 0) return {DegreePolicy::Kind::fixed, bounded(text.substr(6))};
  throw ParseError("unknown degree policy '" + text + "'");
}

int degree_choice(std::uint32_t q, int d, int n) {
  if (q < 3 || d < 2) throw ConfigError("degree_choice needs q >= 3 and d >= 2");
  const double lq = log_base(d, q);
  const double v = 2.0 * lq - (2.0 * n + 6.0) * log_base(lq, q);
  if (!(v > 0.0)) return 0;
  return static_cast<int>(std::min<double>(std::floor(v), kMaxDegree));
}

// ---------------------------------------------------------------------------
// Contexts

std::vector<std::int64_t> inverse_root_power_sums(const LPolynomial& L, int K) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(K) + 1, 0);
  p[0] = L.degree();
  constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
  for (int k = 1; k <= K; ++k) {
    __int128 acc = k <= L.degree() ? -static_cast<__int128>(k) * L.c[static_cast<std::size_t>(k)] : 0;
    for (int i = 1; i < k && i <= L.degree(); ++i) {
      acc -= static_cast<__int128>(L.c[static_cast<std::size_t>(i)]) * p[static_cast<std::size_t>(k - i)];
    }
    if (acc > kLimit || acc < -kLimit) throw ResourceError("power sum overflow", k);
    p[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(acc);
  }
  return p;
}

BoundContext make_context(const LPolynomial& L) {
  BoundContext ctx;
  ctx.L = L;
  ctx.zeros = find_zero_angles(L);
  // |p_k| <= 2g q^{k/2} stays well inside int64 for the degrees in use.
  int K = kMaxDegree;
  while (K > 0 && 2.0 * L.genus * std::pow(static_cast<double>(L.q), K / 2.0) > 1e18) --K;
  const auto p = inverse_root_power_sums(L, K);
  ctx.abs_power_sums.assign(static_cast<std::size_t>(kMaxDegree) + 1, 0.0);
  for (int k = 0; k <= kMaxDegree; ++k) {
    ctx.abs_power_sums[static_cast<std::size_t>(k)] =
        k <= K ? std::abs(static_cast<double>(p[static_cast<std::size_t>(k)])) / std::pow(static_cast<double>(L.q), k / 2.0)
               : std::abs(power_sum(ctx.zeros, k).real());
  }
  return ctx;
}

BoundContext make_context(const Character& character) { return make_context(compute_lpolynomial(character)); }

// ---------------------------------------------------------------------------
// Bounds

bool BoundReport::sound(double slack) const {
  return side == Side::majorant ? empirical_max <= rigorous_bound + slack : empirical_max >= rigorous_bound - slack;
}

TrigPoly bounding_poly(const BoundTarget& target, Side side, int N, ExtremalCache& cache) {
  if (target.kind == BoundTarget::Kind::log_modulus) {
    if (side == Side::minorant) throw ConfigError("log_modulus has no lower bound (it is -infinity at the zeros)");
    return cache.get(Target::log2sin(), Side::majorant, N)->poly;
  }
  // G = -B_{n+1}/(n+1)!: majorants of G come from minorants of B_{n+1}.
  const auto p = cache.get(Target::bernoulli(target.n + 1), opposite(side), N);
  return p->poly.scaled(-1.0 / factorial(target.n + 1));
}

BoundReport rigorous_bound(const BoundContext& ctx, const BoundTarget& target, Side side, int N, BoundMode mode,
                           ExtremalCache& cache) {
  if (N < 0 || N > kMaxDegree) throw ConfigError("degree N out of range");
  const TrigPoly V = bounding_poly(target, side, N, cache);
  BoundReport r;
  r.target = target;
  r.side = side;
  r.D = ctx.L.D;
  r.q = ctx.L.q;
  r.g = ctx.genus();
  r.d = ctx.d();
  r.N_used = N;
  r.mode = mode;
  r.policy = DegreePolicy{DegreePolicy::Kind::fixed, N}.tag();
  r.main_term = 2.0 * r.g * V.mean();
  for (int k = 1; k <= N; ++k) r.tail_term += 2.0 * std::abs(V.coefficient(k)) * weight(ctx, k, mode);
  r.rigorous_bound = side == Side::majorant ? r.main_term + r.tail_term : r.main_term - r.tail_term;
  return r;
}

BoundReport bound_with_policy(const BoundContext& ctx, const BoundTarget& target, Side side,
                              const DegreePolicy& policy, BoundMode mode, ExtremalCache& cache) {
  const int formula_n = degree_choice(ctx.L.q, ctx.d(), target.n);
  BoundReport best;
  switch (policy.kind) {
    case DegreePolicy::Kind::formula:
      best = rigorous_bound(ctx, target, side, formula_n, mode, cache);
      break;
    case DegreePolicy::Kind::fixed:
      best = rigorous_bound(ctx, target, side, policy.N, mode, cache);
      break;
    case DegreePolicy::Kind::exhaustive: {
      const int cap = std::max(policy.N, formula_n);
      for (int N = 0; N <= cap; ++N) {
        auto r = rigorous_bound(ctx, target, side, N, mode, cache);
        const bool better = side == Side::majorant ? r.rigorous_bound < best.rigorous_bound
                                                   : r.rigorous_bound > best.rigorous_bound;
        if (N == 0 || better) best = r;
      }
      break;
    }
  }
  best.policy = policy.tag();
  return best;
}

// ---------------------------------------------------------------------------
// Empirical extrema

double evaluate_target(const ZeroAngles& zeros, const BoundTarget& target, double theta) {
  if (target.kind == BoundTarget::Kind::log_modulus) return log_modulus(zeros, theta);
  return s_n(zeros, target.n, theta);
}

Extremum empirical_extremum(const ZeroAngles& zeros, const BoundTarget& target, Side side, int grid_size) {
  if (grid_size < 1024) throw ConfigError("grid_size must be at least 1024");
  if (target.kind == BoundTarget::Kind::log_modulus && side == Side::minorant) {
    throw ConfigError("log_modulus is unbounded below");
  }
  const double sign = static_cast<double>(static_cast<int>(side));
  auto f = [&](double t) { return sign * evaluate_target(zeros, target, t); };

  std::vector<double> v(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) v[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / grid_size);
  std::vector<int> order(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) order[static_cast<std::size_t>(i)] = i;
  const int top = std::min(8, grid_size);
  std::partial_sort(order.begin(), order.begin() + top, order.end(), [&](int a, int b) {
    const double va = v[static_cast<std::size_t>(a)];
    const double vb = v[static_cast<std::size_t>(b)];
    return va > vb || (va == vb && a < b);
  });

  Extremum best{-std::numeric_limits<double>::infinity(), 0.0};
  auto consider = [&](double t, double value) {
    if (value > best.value) best = {value, wrap(t)};
  };
  for (int i = 0; i < grid_size; ++i) consider(static_cast<double>(i) / grid_size, v[static_cast<std::size_t>(i)]);
  const double h = 1.0 / grid_size;
  for (int j = 0; j < top; ++j) {
    const double center = static_cast<double>(order[static_cast<std::size_t>(j)]) / grid_size;
    const auto [t, value] = golden_max(f, center - h, center + h);
    consider(t, value);
  }
  if (target.kind == BoundTarget::Kind::s_n && target.n == 0) {
    for (double t : zeros.theta) {
      consider(t, sign * s0_right_limit(zeros, t));
      consider(t, sign * s0_left_limit(zeros, t));
    }
  }
  return {sign * best.value, best.theta};
}

double envelope(const BoundTarget& target, Side side, std::uint32_t q, int d) {
  const int n = target.n;
  const double base = d / std::pow(log_base(d, q), n + 1);
  if (target.kind == BoundTarget::Kind::log_modulus) return std::log(2.0) / 2.0 * base;
  if (n == 0) return (side == Side::majorant ? 0.25 : -0.25) * base;
  const auto A = constants_A(n);
  const double scale = std::pow(kTwoPi, n);
  return side == Side::majorant ? A.plus / scale * base : -A.minus / scale * base;
}

// ---------------------------------------------------------------------------
// Symmetric-interval bound for S_0

double s0_bound_interval_method(const BoundContext& ctx, double theta, int N, Side side, BoundMode mode,
                                ExtremalCache& cache) {
  return interval_bound(ctx, theta, N, side, mode, cache);
}

IntervalCheck check_s0_interval_method(const BoundContext& ctx, int N, Side side, BoundMode mode, int samples,
                                       ExtremalCache& cache) {
  IntervalCheck out;
  out.worst_slack = std::numeric_limits<double>::infinity();
  const double sign = static_cast<double>(static_cast<int>(side));
  auto check = [&](double theta, double value) {
    const double slack = sign * (interval_bound(ctx, theta, N, side, mode, cache) - value);
    ++out.points_checked;
    if (slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_theta = theta;
    }
    if (slack < -1e-9) ++out.violations;
  };
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    check(t, s_n(ctx.zeros, 0, t));
  }
  for (double t : ctx.zeros.theta) {
    check(t, s0_right_limit(ctx.zeros, t));
    check(t, s0_left_limit(ctx.zeros, t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scans

std::string SampleSpec::tag() const { return all ? "all" : "random:" + std::to_string(count); }

SampleSpec parse_sample(const std::string& text) {
  if (text == "all") return {};
  if (text.rfind("random:", 0) == 0) {
    const int m = parse_int(text.substr(7), "sample size");
    if (m <= 0) throw ParseError("sample size must be positive");
    return {false, static_cast<std::uint64_t>(m)};
  }
  throw ParseError("unknown sample spec '" + text + "' (expected all or random:<m>)");
}

int scan_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("HYPERELL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

namespace {

std::vector<MonicPoly> scan_population(const ScanConfig& cfg, bool& truncated) {
  const Field field(cfg.q);
  const std::uint64_t total = hd_cardinality(cfg.q, cfg.d);
  truncated = false;
  std::vector<MonicPoly> out;
  if (cfg.sample.all || cfg.sample.count >= total) {
    HdStream stream(field, cfg.d);
    while (auto D = stream.next()) {
      if (out.size() >= cfg.budget) {
        truncated = true;
        break;
      }
      out.push_back(*D);
    }
    return out;
  }
  const std::uint64_t space = checked_pow(cfg.q, cfg.d);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
  std::set<std::uint64_t> codes;
  const std::uint64_t want = std::min(cfg.sample.count, cfg.budget);
  truncated = want < cfg.sample.count;
  std::uint64_t attempts = 0;
  while (codes.size() < want) {
    if (++attempts > 1000 * want + 1000) {
      truncated = true;
      break;
    }
    const std::uint64_t code = pick(rng);
    if (codes.count(code) != 0) continue;
    if (is_squarefree(MonicPoly::from_code(field, cfg.d, code))) codes.insert(code);
  }
  for (auto code : codes) out.push_back(MonicPoly::from_code(field, cfg.d, code));
  std::sort(out.begin(), out.end());
  return out;
}

struct DOutcome {
  std::vector<ScanRow> rows;
  std::vector<std::string> violations;
  std::uint64_t interval_points = 0;
};

std::string describe(const BoundReport& r, const std::string& method) {
  std::ostringstream os;
  os.precision(17);
  os << "D=" << r.D << " target=" << r.target.tag() << " side=" << to_string(r.side) << " method=" << method
     << " policy=" << r.policy << " mode=" << to_string(r.mode) << " N=" << r.N_used << " empirical=" << r.empirical_max
     << " bound=" << r.rigorous_bound;
  return os.str();
}

DOutcome process(const ScanConfig& cfg, const MonicPoly& D) {
  DOutcome out;
  const Character chi(D);
  const BoundContext ctx = make_context(chi);
  auto& cache = ExtremalCache::shared();
  for (const auto& target : cfg.targets) {
    std::vector<Side> sides{Side::majorant};
    if (target.has_lower_bound()) sides.push_back(Side::minorant);
    for (Side side : sides) {
      const Extremum ext = empirical_extremum(ctx.zeros, target, side, cfg.grid_size);
      const double env = envelope(target, side, cfg.q, cfg.d);
      std::map<std::pair<std::string, int>, BoundReport> by_key;
      for (const auto& policy : cfg.policies) {
        for (BoundMode mode : cfg.modes) {
          BoundReport r = bound_with_policy(ctx, target, side, policy, mode, cache);
          r.empirical_max = ext.value;
          r.empirical_argmax = ext.theta;
          r.ratio_to_envelope = ext.value / env;
          if (!r.sound(cfg.slack)) out.violations.push_back("soundness: " + describe(r, "zerosum"));
          by_key[{policy.tag(), static_cast<int>(mode)}] = r;
          out.rows.push_back({r, ctx.L.c, "zerosum"});

          if (cfg.interval_method && target.kind == BoundTarget::Kind::s_n && target.n == 0) {
            BoundReport ir = r;
            const double t = wrap(ext.theta);
            const bool mirrored = t > 0.5;
            const Terms terms = mirrored ? interval_terms(ctx, 1.0 - t, r.N_used, opposite(side), mode, cache)
                                         : interval_terms(ctx, t, r.N_used, side, mode, cache);
            const double s = mirrored ? -1.0 : 1.0;
            ir.main_term = s * terms.main;
            ir.tail_term = terms.tail;
            ir.rigorous_bound = interval_bound(ctx, ext.theta, r.N_used, side, mode, cache);
            if (!ir.sound(cfg.slack)) out.violations.push_back("soundness: " + describe(ir, "interval"));
            const IntervalCheck chk = check_s0_interval_method(ctx, r.N_used, side, mode, cfg.interval_samples, cache);
            out.interval_points += static_cast<std::uint64_t>(chk.points_checked);
            if (chk.violations > 0) {
              std::ostringstream os;
              os.precision(17);
              os << "interval bound violated at " << chk.violations << " points; worst slack " << chk.worst_slack
                 << " at theta=" << chk.worst_theta;
              out.violations.push_back("soundness: " + describe(ir, "interval") + " " + os.str());
            }
            out.rows.push_back({ir, ctx.L.c, "interval"});
          }
        }
      }
      // Exact power sums never loosen a bound; exhaustive never loses to formula.
      auto looser = [&](const BoundReport& a, const BoundReport& b) {
        return side == Side::majorant ? a.rigorous_bound > b.rigorous_bound + cfg.slack
                                      : a.rigorous_bound < b.rigorous_bound - cfg.slack;
      };
      for (const auto& [key, r] : by_key) {
        if (key.second == static_cast<int>(BoundMode::exact)) {
          auto it = by_key.find({key.first, static_cast<int>(BoundMode::weil)});
          if (it != by_key.end() && looser(r, it->second)) {
            out.violations.push_back("mode ordering: " + describe(r, "zerosum"));
          }
        }
        if (key.first.rfind("exhaustive", 0) == 0) {
          auto it = by_key.find({"formula", key.second});
          if (it != by_key.end() && looser(r, it->second)) {
            out.violations.push_back("degree policy: " + describe(r, "zerosum"));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

ScanResult ensemble_scan(const ScanConfig& config) {
  if (config.d % 2 == 0) throw ConfigError("scans need odd degree d");
  if (config.targets.empty()) throw ConfigError("scan has no targets");
  if (config.policies.empty() || config.modes.empty()) throw ConfigError("scan needs a degree policy and a mode");
  ScanResult result;
  result.config = config;
  const auto population = scan_population(config, result.truncated);
  result.d_count = population.size();

  std::vector<DOutcome> outcomes(population.size());
  std::vector<std::exception_ptr> errors(population.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= population.size()) return;
      try {
        outcomes[i] = process(config, population[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(scan_threads(config.threads), std::max<std::size_t>(population.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& o : outcomes) {
    for (auto& r : o.rows) result.rows.push_back(std::move(r));
    for (auto& v : o.violations) result.violations.push_back(std::move(v));
    result.interval_points_checked += o.interval_points;
  }
  return result;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const ScanResult& result) {
  std::ostringstream os;
  const int d = result.config.d;
  os << "q,d,D";
  for (int k = 0; k < d; ++k) os << ",c_" << k;
  os << ",target,n,side,method,policy,N_used,mode,main_term,tail_term,rigorous_bound,empirical_max,argmax,ratio\n";
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    os << r.q << ',' << r.d << ',' << r.D;
    for (auto c : row.c) os << ',' << c;
    os << ',' << r.target.tag() << ',' << r.target.n << ',' << (r.side == Side::majorant ? "upper" : "lower") << ','
       << row.method << ',' << r.policy << ',' << r.N_used << ',' << to_string(r.mode) << ',' << num(r.main_term)
       << ',' << num(r.tail_term) << ',' << num(r.rigorous_bound) << ',' << num(r.empirical_max) << ','
       << num(r.empirical_argmax) << ',' << num(r.ratio_to_envelope) << '\n';
  }
  return os.str();
}

nlohmann::json manifest(const ScanResult& result) {
  const auto& cfg = result.config;
  nlohmann::json j;
  j["q"] = cfg.q;
  j["d"] = cfg.d;
  j["sample"] = cfg.sample.tag();
  j["seed"] = cfg.seed;
  j["grid_size"] = cfg.grid_size;
  j["tolerances"] = {{"soundness_slack", cfg.slack}, {"interval_samples", cfg.interval_samples}};
  j["git_describe"] = build_description();
  std::vector<std::string> targets;
  for (const auto& t : cfg.targets) targets.push_back(t.tag());
  j["targets"] = targets;
  std::vector<std::string> policies;
  for (const auto& p : cfg.policies) policies.push_back(p.tag());
  j["policies"] = policies;
  std::vector<std::string> modes;
  for (auto m : cfg.modes) modes.push_back(to_string(m));
  j["modes"] = modes;
  j["d_count"] = result.d_count;
  j["rows"] = result.rows.size();
  j["truncated"] = result.truncated;
  j["interval_points_checked"] = result.interval_points_checked;
  j["violations"] = result.violations;

  struct Agg {
    std::uint64_t count = 0;
    double max_empirical = -std::numeric_limits<double>::infinity();
    double min_empirical = std::numeric_limits<double>::infinity();
    double max_ratio = -std::numeric_limits<double>::infinity();
    double sum_ratio = 0.0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> hist = std::vector<std::uint64_t>(14, 0);
  };
  std::map<std::string, Agg> groups;
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    const std::string key = r.target.tag() + "|" + (r.side == Side::majorant ? "upper" : "lower") + "|" + row.method +
                            "|" + r.policy + "|" + to_string(r.mode);
    auto& a = groups[key];
    ++a.count;
    a.max_empirical = std::max(a.max_empirical, r.empirical_max);
    a.min_empirical = std::min(a.min_empirical, r.empirical_max);
    a.max_ratio = std::max(a.max_ratio, r.ratio_to_envelope);
    a.sum_ratio += r.ratio_to_envelope;
    const double slack = r.side == Side::majorant ? r.rigorous_bound - r.empirical_max : r.empirical_max - r.rigorous_bound;
    a.min_slack = std::min(a.min_slack, slack);
    // Bins of width 0.25 on [0, 3), plus underflow (first) and overflow (last).
    const double x = r.ratio_to_envelope;
    std::size_t bin = x < 0.0 ? 0 : (x >= 3.0 ? 13 : 1 + static_cast<std::size_t>(x / 0.25));
    ++a.hist[std::min<std::size_t>(bin, 13)];
  }
  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& [key, a] : groups) {
    aggs.push_back({{"group", key},
                    {"count", a.count},
                    {"max_empirical", a.max_empirical},
                    {"min_empirical", a.min_empirical},
                    {"max_ratio", a.max_ratio},
                    {"mean_ratio", a.sum_ratio / static_cast<double>(a.count)},
                    {"min_slack", a.min_slack},
                    {"ratio_histogram", {{"edges", "below 0, [0,3) by 0.25, at least 3"}, {"counts", a.hist}}}});
  }
  j["aggregates"] = aggs;
  return j;
}

std::string build_description() { return HYPERELL_GIT_DESCRIBE; }

}  // namespace hyperell
