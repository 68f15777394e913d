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

#include "hyperell/arg_s.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hyperell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIntegerTol = 1e-13;

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double frac(double x) { return x - std::floor(x); }

bool near_integer(double x) {
  const double f = frac(x);
  return f < kIntegerTol || f > 1.0 - kIntegerTol;
}

}  // namespace

BernoulliTable::BernoulliTable() {
  const int top = kMaxIndex;
  std::vector<Rational> numbers(top + 1);
  numbers[0] = 1;
  for (int m = 1; m <= top; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * numbers[static_cast<std::size_t>(k)];
    numbers[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  coeffs_.resize(top + 1);
  coeffs_double_.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    auto& c = coeffs_[static_cast<std::size_t>(n)];
    c.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = binomial(n, k) * numbers[static_cast<std::size_t>(n - k)];
    for (const auto& r : c) coeffs_double_[static_cast<std::size_t>(n)].push_back(static_cast<double>(r));
  }

  // Extrema of B_n on [0, 1]: endpoints plus the roots of B_n' = n B_{n-1},
  // isolated by exact sign evaluation on a 1/64 grid and rational bisection.
  extrema_.resize(top + 1);
  extrema_[0] = {1.0, 0.0, 1.0, 0.0};
  for (int n = 1; n <= top; ++n) {
    std::vector<Rational> candidates{Rational(0), Rational(1)};
    const int grid = 64;
    auto sign_at = [&](const Rational& x) {
      const Rational v = evaluate_exact(n - 1, x);
      return v > 0 ? 1 : (v < 0 ? -1 : 0);
    };
    for (int i = 0; i <= grid; ++i) {
      const Rational x(i, grid);
      if (sign_at(x) == 0) candidates.push_back(x);
    }
    for (int i = 0; i < grid; ++i) {
      Rational lo(i, grid);
      Rational hi(i + 1, grid);
      const int slo = sign_at(lo);
      const int shi = sign_at(hi);
      if (slo == 0 || shi == 0 || slo == shi) continue;
      for (int it = 0; it < 90; ++it) {
        const Rational mid = (lo + hi) / 2;
        const int sm = sign_at(mid);
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      candidates.push_back((lo + hi) / 2);
    }
    Rational best_max;
    Rational best_min;
    Rational at_max;
    Rational at_min;
    bool first = true;
    for (const auto& x : candidates) {
      const Rational v = evaluate_exact(n, x);
      if (first || v > best_max) {
        best_max = v;
        at_max = x;
      }
      if (first || v < best_min) {
        best_min = v;
        at_min = x;
      }
      first = false;
    }
    extrema_[static_cast<std::size_t>(n)] = {static_cast<double>(best_max), static_cast<double>(at_max),
                                             static_cast<double>(best_min), static_cast<double>(at_min)};
  }
}

const BernoulliTable& BernoulliTable::instance() {
  static const BernoulliTable table;
  return table;
}

void BernoulliTable::check(int n) const {
  if (n < 0 || n > kMaxIndex) {
    throw ConfigError("Bernoulli index " + std::to_string(n) + " outside the table range 0.." +
                      std::to_string(kMaxIndex));
  }
}

const Rational& BernoulliTable::coefficient(int n, int k) const {
  check(n);
  if (k < 0 || k > n) throw ConfigError("Bernoulli coefficient index out of range");
  return coeffs_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

Rational BernoulliTable::evaluate_exact(int n, const Rational& x) const {
  check(n);
  const auto& c = coeffs_[static_cast<std::size_t>(n)];
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double BernoulliTable::evaluate(int n, double x) const {
  check(n);
  const auto& c = coeffs_double_[static_cast<std::size_t>(n)];
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

const BernoulliExtrema& BernoulliTable::extrema(int n) const {
  check(n);
  return extrema_[static_cast<std::size_t>(n)];
}

double periodic_bernoulli(int n, double x) {
  const auto& table = BernoulliTable::instance();
  if (n == 1 && near_integer(x)) return 0.0;
  return table.evaluate(n, frac(x));
}

double log_modulus(const ZeroAngles& zeros, double theta) {
  double acc = 0.0;
  for (double t : zeros.theta) {
    const double x = theta - t;
    if (std::abs(x - std::round(x)) < 1e-12) return -std::numeric_limits<double>::infinity();
    acc += std::log(2.0 * std::abs(std::sin(kPi * x)));
  }
  return acc;
}

double log_modulus_direct(const LPolynomial& L, double theta) {
  std::complex<double> acc = 0.0;
  const double sq = std::sqrt(static_cast<double>(L.q));
  for (std::size_t k = 0; k < L.c.size(); ++k) {
    acc += static_cast<double>(L.c[k]) * std::pow(sq, -static_cast<double>(k)) *
           std::polar(1.0, 2.0 * kPi * static_cast<double>(k) * theta);
  }
  return std::log(std::abs(acc));
}

double s_n(const ZeroAngles& zeros, int n, double theta) {
  if (n < 0 || n >= BernoulliTable::kMaxIndex) {
    throw ConfigError("S_n order " + std::to_string(n) + " outside 0.." + std::to_string(BernoulliTable::kMaxIndex - 1));
  }
  double acc = 0.0;
  for (double t : zeros.theta) acc += periodic_bernoulli(n + 1, theta - t);
  return -acc / factorial(n + 1);
}

double s0_right_limit(const ZeroAngles& zeros, double theta) {
  double acc = 0.0;
  for (double t : zeros.theta) {
    const double x = theta - t;
    acc += near_integer(x) ? -0.5 : frac(x) - 0.5;
  }
  return -acc;
}

double s0_left_limit(const ZeroAngles& zeros, double theta) {
  double acc = 0.0;
  for (double t : zeros.theta) {
    const double x = theta - t;
    acc += near_integer(x) ? 0.5 : frac(x) - 0.5;
  }
  return -acc;
}

double c_n_constant(const ZeroAngles& zeros, int n) {
  if (n < 1) throw ConfigError("c_n is defined for n >= 1");
  double acc = 0.0;
  for (double t : zeros.theta) acc += periodic_bernoulli(n + 1, -t);
  return -acc / factorial(n + 1);
}

double count_zeros(const ZeroAngles& zeros, Interval arc) {
  constexpr double kEndpointTol = 1e-12;
  const double len = arc.length();
  if (!(len >= 0.0) || len > 1.0 + 1e-15) {
    throw ConfigError("interval length must lie in [0, 1], got " + std::to_string(len));
  }
  if (len >= 1.0) return static_cast<double>(zeros.theta.size());
  double n = 0.0;
  for (double t : zeros.theta) {
    const double offset = frac(t - arc.alpha);
    const bool at_alpha = offset < kEndpointTol || offset > 1.0 - kEndpointTol;
    const bool at_beta = std::abs(offset - len) < kEndpointTol;
    if (at_alpha || at_beta) {
      n += 0.5;
    } else if (offset < len) {
      n += 1.0;
    }
  }
  return n;
}

BernoulliExtrema bernoulli_extrema(int n) {
  if (n < 1) throw ConfigError("bernoulli_extrema needs n >= 1");
  return BernoulliTable::instance().extrema(n);
}

double zeta(int s) {
  if (s < 2) throw ConfigError("zeta(s) implemented for integer s >= 2");
  // Euler-Maclaurin with ten explicit terms and six correction terms.
  constexpr int K = 10;
  static const long double b2j[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730};
  long double acc = 0.0L;
  for (int k = 1; k < K; ++k) acc += std::pow(static_cast<long double>(k), -s);
  const long double kk = K;
  acc += std::pow(kk, 1 - s) / (s - 1) + std::pow(kk, -s) / 2;
  long double rising = s;  // s (s+1) ... (s+2j-2)
  long double fact = 2;    // (2j)!
  for (int j = 1; j <= 6; ++j) {
    acc += b2j[j - 1] / fact * rising * std::pow(kk, -s - 2 * j + 1);
    rising *= static_cast<long double>(s + 2 * j - 1) * (s + 2 * j);
    fact *= static_cast<long double>(2 * j + 1) * (2 * j + 2);
  }
  return static_cast<double>(acc);
}

ConstantPair constants_A(int n) {
  if (n < 1 || n >= BernoulliTable::kMaxIndex) throw ConfigError("constants_A needs 1 <= n <= 12");
  const auto& e = BernoulliTable::instance().extrema(n + 1);
  const double w = std::pow(kPi, n) / 2.0 / factorial(n + 1);
  return {w * e.max, -w * e.min};
}

ConstantPair constants_C(int n) {
  if (n < 1) throw ConfigError("constants_C needs n >= 1");
  const double base = 1.0 / (kPi * std::pow(2.0, n + 1));
  if (n % 2 == 1) {
    const double sharp = zeta(n + 1) * base;
    const double soft = (1.0 - std::pow(2.0, -n)) * sharp;
    return n % 4 == 1 ? ConstantPair{sharp, soft} : ConstantPair{soft, sharp};
  }
  const double inner = (1.0 - std::pow(2.0, -n - 2)) * (1.0 - std::pow(2.0, -n + 1)) * zeta(n) * zeta(n + 2) /
                       (1.0 - std::pow(2.0, -n));
  const double v = std::sqrt(2.0) * base * std::sqrt(inner);
  return {v, v};
}

}  // namespace hyperell
