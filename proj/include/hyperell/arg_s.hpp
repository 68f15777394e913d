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

// Bernoulli polynomials and the functions of the zero angles built on them:
// log|L| on the critical circle, the argument function S_0 and its
// mean-zero antiderivatives S_n, the zero counter N(I), and the constant
// families M_n, m_n, A_n^{+-}, C_n^{+-}.

#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperell/lpoly.hpp"

namespace hyperell {

using Rational = boost::multiprecision::cpp_rational;

/// Location and value of the max and min of B_n on [0, 1].
struct BernoulliExtrema {
  double max = 0.0;
  double argmax = 0.0;
  double min = 0.0;
  double argmin = 0.0;
};

/// Exact coefficients of B_0..B_13 and their extrema on [0, 1].
class BernoulliTable {
 public:
  static constexpr int kMaxIndex = 13;

  /// Shared immutable instance.
  static const BernoulliTable& instance();

  /// Coefficient of x^k in B_n. Throws ConfigError outside 0..kMaxIndex.
  const Rational& coefficient(int n, int k) const;
  /// Bernoulli number B_n = B_n(0).
  const Rational& number(int n) const { return coefficient(n, 0); }
  Rational evaluate_exact(int n, const Rational& x) const;
  double evaluate(int n, double x) const;
  const BernoulliExtrema& extrema(int n) const;

 private:
  BernoulliTable();
  void check(int n) const;

  std::vector<std::vector<Rational>> coeffs_;
  std::vector<std::vector<double>> coeffs_double_;
  std::vector<BernoulliExtrema> extrema_;
};

/// B_n(x - floor x), with the sawtooth B_1 renormalized to 0 at integers.
double periodic_bernoulli(int n, double x);

/// sum_j log 2|sin pi(theta - theta_j)|; -infinity within 1e-12 of a zero.
double log_modulus(const ZeroAngles& zeros, double theta);

/// log |L(q^{-1/2} e(theta))| evaluated directly from the coefficients.
double log_modulus_direct(const LPolynomial& L, double theta);

/// S_n(theta) = -(1/(n+1)!) sum_j B_{n+1}(theta - theta_j), 0 <= n <= 12.
double s_n(const ZeroAngles& zeros, int n, double theta);

/// One-sided limits of S_0 at theta.
double s0_right_limit(const ZeroAngles& zeros, double theta);
double s0_left_limit(const ZeroAngles& zeros, double theta);

/// c_n = -(1/(n+1)!) sum_j B_{n+1}(-theta_j) = S_n(0), for n >= 1.
double c_n_constant(const ZeroAngles& zeros, int n);

/// An arc [alpha, beta] of R/Z with 0 <= beta - alpha <= 1.
struct Interval {
  double alpha = 0.0;
  double beta = 0.0;
  double length() const noexcept { return beta - alpha; }
};

/// sum_j 1_I(theta_j) with the normalized indicator: zeros on an endpoint
/// count 1/2, every zero counts 1 when the arc is the full circle.
double count_zeros(const ZeroAngles& zeros, Interval arc);

/// (M_n, m_n) = (max, min) of B_n on [0, 1], 1 <= n <= 13.
BernoulliExtrema bernoulli_extrema(int n);

/// Riemann zeta at an integer s >= 2, accurate to about 1e-15.
double zeta(int s);

struct ConstantPair {
  double minus = 0.0;
  double plus = 0.0;
};

/// A_n^- = (pi^n/2) M_{n+1}/(n+1)!, A_n^+ = -(pi^n/2) m_{n+1}/(n+1)!.
ConstantPair constants_A(int n);

/// The number-field constants C_n^{+-} (odd n: zeta(n+1)/(pi 2^{n+1}) on the
/// sharp side, times (1 - 2^{-n}) on the other; even n: the symmetric
/// geometric-mean expression).
ConstantPair constants_C(int n);

}  // namespace hyperell
