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

// One-sided trigonometric approximation of periodic targets on R/Z:
// log 2|sin pi theta| from above, the Bernoulli periodic functions from
// both sides, and interval indicators by composition of sawtooth bounds.
//
// Construction is a discretized linear program over the Fourier
// coefficients, refined by cutting planes, then certified on a finer grid
// and repaired by a constant shift.

#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperell/arg_s.hpp"
#include "hyperell/errors.hpp"

namespace hyperell {

/// Real trigonometric polynomial sum_{|k| <= N} c_k e(k theta), stored by its
/// nonnegative-index coefficients; c_{-k} = conj(c_k).
class TrigPoly {
 public:
  TrigPoly() : c_(1, 0.0) {}
  explicit TrigPoly(std::vector<std::complex<double>> c);
  /// From V = a_0 + sum a_k cos(2 pi k theta) + b_k sin(2 pi k theta);
  /// b holds b_1..b_N.
  static TrigPoly from_cos_sin(const std::vector<double>& a, const std::vector<double>& b);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  std::complex<double> coefficient(int k) const;
  double mean() const noexcept { return c_[0].real(); }
  double operator()(double theta) const noexcept;

  std::vector<double> cos_coefficients() const;  // a_0..a_N
  std::vector<double> sin_coefficients() const;  // b_1..b_N

  /// theta -> V(theta - beta).
  TrigPoly shifted(double beta) const;
  /// theta -> V(-theta).
  TrigPoly reflected() const;
  TrigPoly scaled(double s) const;
  TrigPoly plus_constant(double v) const;
  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);

 private:
  std::vector<std::complex<double>> c_;
};

nlohmann::json to_json(const TrigPoly& p);

enum class Side { minorant = -1, majorant = 1 };

std::string to_string(Side side);
Side parse_side(const std::string& text);

/// Periodic target: log 2|sin pi theta| or the Bernoulli function B_m, m >= 1.
struct Target {
  enum class Kind { log2sin, bernoulli };
  Kind kind = Kind::log2sin;
  int m = 0;

  static Target log2sin() { return {Kind::log2sin, 0}; }
  static Target bernoulli(int m) { return {Kind::bernoulli, m}; }

  /// "log2sin", "sawtooth" or "bernoulli:<m-1>".
  std::string tag() const;
  double operator()(double theta) const;
  bool is_even() const noexcept { return kind == Kind::log2sin || m % 2 == 0; }
  auto operator<=>(const Target&) const = default;
};

struct OneSidedResult {
  TrigPoly poly;
  Side side = Side::majorant;
  Target target;
  /// Min over the certification points of side * (poly - target).
  double certified_margin = 0.0;
  /// Constant added (times side) after the LP to enforce one-sidedness.
  double repair_epsilon = 0.0;
  double achieved_mean = 0.0;
  /// Mean before repair; bounded by the oracle from the relaxed side.
  double lp_mean = 0.0;
  double oracle_mean = 0.0;
  int cutting_rounds = 0;
  int lp_points = 0;
};

/// Optimal mean of the one-sided problem: log 2/(N+1) for the log2sin
/// majorant, M_m/(N+1)^m and m_m/(N+1)^m for B_m.
double oracle_mean(const Target& target, Side side, int N);

/// grid_points = 0 selects 40 (N+1); smaller positive values are rejected.
/// Throws ConfigError for an unsupported request (log2sin minorant, m out of
/// range), SolverError from the LP, CertificationError if repair would exceed
/// 1e-4 of the oracle mean.
OneSidedResult construct_one_sided(const Target& target, Side side, int N, int grid_points = 0);

struct IntervalPolys {
  TrigPoly minorant;
  TrigPoly majorant;
  double minorant_gap = 0.0;  // |I| - mean(T-)
  double majorant_gap = 0.0;  // mean(T+) - |I|
  double certified_margin = 0.0;
};

/// (beta - alpha) + B_1(alpha - theta) + B_1(theta - beta): the normalized
/// indicator of [alpha, beta].
double interval_indicator(Interval arc, double theta);

/// T+- = |I| + P+-_1(alpha - theta) + P+-_1(theta - beta).
IntervalPolys interval_polys(Interval arc, int N, int grid_points = 0);

/// Uniform bound on |T^(k)|, k != 0: 2 (M_1/(N+1) + 1/(2 pi)) <= 1 + 1/pi.
double interval_coefficient_bound();

struct CoefficientReport {
  std::string target;
  int N = 0;
  /// max_k |P^(k)| k^m over 1 <= k <= N (Bernoulli targets; 0 otherwise).
  double fitted_constant = 0.0;
  /// Largest excursion outside [-1/(2k), 0] (log2sin majorant; 0 otherwise).
  double worst_excursion = 0.0;
  int worst_k = 0;
};

/// Throws CertificationError if the log2sin majorant leaves
/// [-1/(2|k|) - 1e-6, 1e-6].
CoefficientReport verify_coefficient_bounds(const OneSidedResult& result);

/// Thread-safe populate-once cache keyed by (target, side, N).
class ExtremalCache {
 public:
  explicit ExtremalCache(int grid_points = 0) : grid_points_(grid_points) {}
  std::shared_ptr<const OneSidedResult> get(const Target& target, Side side, int N);
  std::size_t constructions() const;

  static ExtremalCache& shared();

 private:
  struct Entry {
    std::once_flag once;
    std::shared_ptr<const OneSidedResult> value;
  };
  using Key = std::tuple<Target, int, int>;

  int grid_points_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<Entry>> entries_;
  std::size_t constructions_ = 0;
};

}  // namespace hyperell
