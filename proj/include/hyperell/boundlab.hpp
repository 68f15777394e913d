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

// Executable bounds for log|L|, S_0 and S_n on the critical circle.
//
// Summing a one-sided polynomial V over the zero angles gives
//     F(theta) <= 2g V^(0) + sum_{k != 0} |V^(k)| w_k,
// with w_k = q^{|k|/2} (Weil) or the computed |sum_j e(k theta_j)|. The
// symmetric-interval variant for S_0 bounds 2 S_0(theta) through the zero
// count of [-theta, theta]. Ensemble scans compare both with the empirical
// extrema over theta.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperell/arg_s.hpp"
#include "hyperell/extremal.hpp"
#include "hyperell/lpoly.hpp"

namespace hyperell {

/// log_modulus (n = 0 by convention) or S_n.
struct BoundTarget {
  enum class Kind { log_modulus, s_n };
  Kind kind = Kind::s_n;
  int n = 0;

  static BoundTarget log_modulus() { return {Kind::log_modulus, 0}; }
  static BoundTarget s(int n) { return {Kind::s_n, n}; }
  /// "logmod" or "s:<n>".
  std::string tag() const;
  bool has_lower_bound() const noexcept { return kind == Kind::s_n; }
  auto operator<=>(const BoundTarget&) const = default;
};

/// Parses "logmod" or "s:<n>" with 0 <= n <= 12. Throws ParseError.
BoundTarget parse_bound_target(const std::string& text);

enum class BoundMode { weil, exact };
std::string to_string(BoundMode mode);
BoundMode parse_bound_mode(const std::string& text);

/// How the degree N is chosen.
struct DegreePolicy {
  enum class Kind { formula, exhaustive, fixed };
  Kind kind = Kind::formula;
  int N = 0;  // fixed degree, or the cap for exhaustive

  /// "formula", "exhaustive", "exhaustive:<cap>", "fixed:<N>".
  std::string tag() const;
  auto operator<=>(const DegreePolicy&) const = default;
};
DegreePolicy parse_degree_policy(const std::string& text);

inline constexpr int kDefaultExhaustiveCap = 12;
inline constexpr int kMaxDegree = 64;

/// N = max(0, floor(2 log_q d - (2n+6) log_q log_q d)), capped at kMaxDegree.
int degree_choice(std::uint32_t q, int d, int n);

/// Everything a bound needs about one L-function.
struct BoundContext {
  LPolynomial L;
  ZeroAngles zeros;
  /// |sum_j e(k theta_j)| for k = 0..kMaxDegree, from exact integer power sums.
  std::vector<double> abs_power_sums;

  int genus() const noexcept { return L.genus; }
  int d() const noexcept { return 2 * L.genus + 1; }
};

BoundContext make_context(const LPolynomial& L);
BoundContext make_context(const Character& character);

/// p_k = sum_j alpha_j^k for L(u) = prod (1 - alpha_j u), k = 0..K, exactly.
/// Throws ResourceError on int64 overflow.
std::vector<std::int64_t> inverse_root_power_sums(const LPolynomial& L, int K);

struct BoundReport {
  BoundTarget target;
  Side side = Side::majorant;  // majorant: upper bound; minorant: lower bound
  std::string D;
  std::uint32_t q = 0;
  int d = 0;
  int g = 0;
  int N_used = 0;
  BoundMode mode = BoundMode::weil;
  std::string policy;
  double main_term = 0.0;
  double tail_term = 0.0;
  /// main + tail (upper) or main - tail (lower).
  double rigorous_bound = 0.0;
  /// Max (upper) or min (lower) over theta.
  double empirical_max = 0.0;
  double empirical_argmax = 0.0;
  double ratio_to_envelope = 0.0;

  /// empirical within the bound up to slack.
  bool sound(double slack = 1e-9) const;
};

/// The polynomial V with F <= sum_j V(theta - theta_j) (upper) or
/// F >= sum_j V(theta - theta_j) (lower).
TrigPoly bounding_poly(const BoundTarget& target, Side side, int N, ExtremalCache& cache = ExtremalCache::shared());

/// Main and tail terms for a fixed N; empirical fields are left at zero.
BoundReport rigorous_bound(const BoundContext& ctx, const BoundTarget& target, Side side, int N, BoundMode mode,
                           ExtremalCache& cache = ExtremalCache::shared());

/// Resolves the policy (exhaustive mode minimizes the bound over
/// 0..max(cap, formula N)) and returns the report.
BoundReport bound_with_policy(const BoundContext& ctx, const BoundTarget& target, Side side,
                              const DegreePolicy& policy, BoundMode mode,
                              ExtremalCache& cache = ExtremalCache::shared());

struct Extremum {
  double value = 0.0;
  double theta = 0.0;
};

/// Max of F (side majorant) or min of F (side minorant) over a uniform grid
/// of grid_size >= 1024 points, golden-section refined around the best 8
/// cells; for S_0 the one-sided limits at every zero are included.
Extremum empirical_extremum(const ZeroAngles& zeros, const BoundTarget& target, Side side, int grid_size);

/// F(theta) for the target.
double evaluate_target(const ZeroAngles& zeros, const BoundTarget& target, double theta);

/// Asymptotic constant times d/(log_q d)^{n+1}; negative for lower bounds.
double envelope(const BoundTarget& target, Side side, std::uint32_t q, int d);

/// Symmetric-interval bound for S_0 at theta: upper (majorant) or lower
/// (minorant), via I = [-theta, theta] and oddness outside [0, 1/2].
double s0_bound_interval_method(const BoundContext& ctx, double theta, int N, Side side, BoundMode mode,
                                ExtremalCache& cache = ExtremalCache::shared());

struct IntervalCheck {
  int points_checked = 0;
  int violations = 0;
  double worst_slack = 0.0;  // min over checks of (bound - S_0) * side
  double worst_theta = 0.0;
};

/// Checks the interval bound against S_0 at `samples` equispaced theta and at
/// both one-sided limits at every zero.
IntervalCheck check_s0_interval_method(const BoundContext& ctx, int N, Side side, BoundMode mode, int samples = 256,
                                       ExtremalCache& cache = ExtremalCache::shared());

// ---------------------------------------------------------------------------
// Ensemble scans

struct SampleSpec {
  bool all = true;
  std::uint64_t count = 0;  // random draws without replacement
  std::string tag() const;
};
SampleSpec parse_sample(const std::string& text);

struct ScanConfig {
  std::uint32_t q = 3;
  int d = 5;
  std::vector<BoundTarget> targets{BoundTarget::log_modulus(), BoundTarget::s(0), BoundTarget::s(1),
                                   BoundTarget::s(2)};
  SampleSpec sample;
  std::uint64_t seed = 1;
  std::vector<DegreePolicy> policies{DegreePolicy{DegreePolicy::Kind::formula, 0},
                                     DegreePolicy{DegreePolicy::Kind::exhaustive, kDefaultExhaustiveCap}};
  std::vector<BoundMode> modes{BoundMode::weil, BoundMode::exact};
  int grid_size = 1 << 14;
  /// Maximum number of D processed; beyond it the scan is truncated.
  std::uint64_t budget = 1u << 20;
  /// 0: hardware concurrency. HYPERELL_THREADS caps it further.
  int threads = 0;
  bool interval_method = true;
  int interval_samples = 256;
  double slack = 1e-9;
};

struct ScanRow {
  BoundReport report;
  std::vector<std::int64_t> c;
  /// "zerosum" (one-sided polynomial summed over zeros) or "interval".
  std::string method = "zerosum";
};

struct ScanResult {
  ScanConfig config;
  std::vector<ScanRow> rows;
  std::uint64_t d_count = 0;
  bool truncated = false;
  std::uint64_t interval_points_checked = 0;
  std::vector<std::string> violations;
};

/// Number of worker threads the scan will use.
int scan_threads(int requested);

/// Rows sorted by D then target, side, policy, mode; identical for any
/// thread count.
ScanResult ensemble_scan(const ScanConfig& config);

/// CSV with header q,d,D,c_0..c_2g,target,n,side,method,policy,N_used,mode,
/// main_term,tail_term,rigorous_bound,empirical_max,argmax,ratio.
std::string to_csv(const ScanResult& result);

/// Run manifest with aggregates per (target, side, policy, mode).
nlohmann::json manifest(const ScanResult& result);

/// `git describe` of the build.
std::string build_description();

}  // namespace hyperell
