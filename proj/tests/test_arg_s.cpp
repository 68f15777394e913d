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

#include <doctest.h>

#include <cmath>

#include "hyperell/arg_s.hpp"
#include "oracles.hpp"

using namespace hyperell;

namespace {

ZeroAngles zeros_of(std::uint32_t q, const char* D) {
  return find_zero_angles(compute_lpolynomial(Character(parse_monic(Field(q), D))));
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("Bernoulli numbers and polynomials") {
  const auto& t = BernoulliTable::instance();
  CHECK(t.number(1) == Rational(-1, 2));
  CHECK(t.number(2) == Rational(1, 6));
  CHECK(t.number(4) == Rational(-1, 30));
  CHECK(t.number(12) == Rational(-691, 2730));
  CHECK(t.number(13) == 0);
  for (int n = 0; n <= 13; ++n) {
    for (double x : {0.0, 0.1, 0.25, 0.5, 0.9}) {
      CHECK(t.evaluate(n, x) == doctest::Approx(double(oracle::bernoulli_poly(n, x))).epsilon(1e-12));
    }
  }
  CHECK(t.evaluate_exact(2, Rational(1, 2)) == Rational(-1, 12));
  CHECK_THROWS_AS(t.coefficient(14, 0), ConfigError);
}

TEST_CASE("Bernoulli extrema match a dense scan") {
  for (int n = 1; n <= 13; ++n) {
    const auto e = bernoulli_extrema(n);
    double mx = -1e300;
    double mn = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      const double v = double(oracle::bernoulli_poly(n, i / 200000.0L));
      mx = std::max(mx, v);
      mn = std::min(mn, v);
    }
    CHECK(e.max == doctest::Approx(mx).epsilon(1e-9));
    CHECK(e.min == doctest::Approx(mn).epsilon(1e-9));
    CHECK(BernoulliTable::instance().evaluate(n, e.argmax) == doctest::Approx(e.max).epsilon(1e-14));
  }
  CHECK(bernoulli_extrema(2).min == doctest::Approx(-1.0 / 12));
  CHECK(bernoulli_extrema(2).max == doctest::Approx(1.0 / 6));
}

TEST_CASE("periodic Bernoulli: periodicity and the renormalized sawtooth") {
  for (int n = 1; n <= 6; ++n) {
    for (double x : {0.13, 0.5, 0.77}) {
      CHECK(periodic_bernoulli(n, x + 3.0) == doctest::Approx(periodic_bernoulli(n, x)).epsilon(1e-12));
      CHECK(periodic_bernoulli(n, x - 2.0) == doctest::Approx(periodic_bernoulli(n, x)).epsilon(1e-12));
    }
  }
  CHECK(periodic_bernoulli(1, 0.0) == 0.0);
  CHECK(periodic_bernoulli(1, 2.0) == 0.0);
  CHECK(periodic_bernoulli(1, 0.25) == doctest::Approx(-0.25));
}

TEST_CASE("zeta at integers") {
  CHECK(zeta(2) == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-15));
  CHECK(zeta(4) == doctest::Approx(std::pow(M_PI, 4) / 90).epsilon(1e-15));
  CHECK(zeta(3) == doctest::Approx(1.2020569031595942).epsilon(1e-15));
  CHECK(zeta(13) == doctest::Approx(1.0001227133475785).epsilon(1e-15));
}

TEST_CASE("log modulus: zero sum equals direct evaluation") {
  oracle::Gen gen(41);
  for (const char* D : {"x^5+2x+1", "x^7+x^3+2", "x^5+x^2+1"}) {
    const auto L = compute_lpolynomial(Character(parse_monic(Field(3), D)));
    const auto z = find_zero_angles(L);
    for (int i = 0; i < 200; ++i) {
      const double t = gen.uniform();
      const double direct = oracle::log_abs_L(L.c, 3.0, t);
      CHECK(log_modulus(z, t) == doctest::Approx(direct).epsilon(1e-8));
      CHECK(log_modulus_direct(L, t) == doctest::Approx(direct).epsilon(1e-10));
    }
    CHECK(std::isinf(log_modulus(z, z.theta[0])));
  }
}

TEST_CASE("S_n: mean zero, derivative chain, oddness and jumps") {
  oracle::Gen gen(42);
  const auto z = zeros_of(5, "x^7+3x^2+x+1");
  const double twog = static_cast<double>(z.theta.size());
  for (int n = 0; n <= 4; ++n) {
    const double mean = oracle::simpson_pieces([&](double t) { return s_n(z, n, t); }, z.theta);
    CHECK(std::abs(mean) < 1e-7);
  }
  for (int n = 1; n <= 4; ++n) {
    for (int i = 0; i < 50; ++i) {
      const double t = gen.uniform();
      bool near = false;
      for (double tj : z.theta) near = near || std::abs(std::remainder(t - tj, 1.0)) < 1e-3;
      if (near) continue;
      const double h = 1e-5;
      const double fd = (s_n(z, n, t + h) - s_n(z, n, t - h)) / (2 * h);
      CHECK(std::abs(fd - s_n(z, n - 1, t)) < 1e-6);
    }
  }
  for (int i = 0; i < 50; ++i) {
    const double t = gen.uniform();
    CHECK(s_n(z, 0, -t) == doctest::Approx(-s_n(z, 0, t)).epsilon(1e-12));
  }
  // S_0 rises by one at each simple zero and decreases with slope 2g between.
  for (double tj : z.theta) {
    CHECK(s0_right_limit(z, tj) - s0_left_limit(z, tj) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const double a = 0.01;
  const double b = 0.011;
  CHECK((s_n(z, 0, b) - s_n(z, 0, a)) / (b - a) == doctest::Approx(-twog).epsilon(1e-9));
  // S_n(theta) = -(1/(n+1)!) sum B_{n+1}(theta - theta_j) by the oracle polynomial.
  for (int n = 0; n <= 6; ++n) {
    const double t = 0.3141;
    double s = 0.0;
    for (double tj : z.theta) {
      const double x = t - tj - std::floor(t - tj);
      s += double(oracle::bernoulli_poly(n + 1, x));
    }
    CHECK(s_n(z, n, t) == doctest::Approx(-s / factorial(n + 1)).epsilon(1e-10));
  }
  CHECK(c_n_constant(z, 2) == doctest::Approx(s_n(z, 2, 0.0)).epsilon(1e-12));
}

TEST_CASE("zero count identity on random intervals") {
  oracle::Gen gen(43);
  const auto z = zeros_of(3, "x^7+x^3+2");
  const double twog = static_cast<double>(z.theta.size());
  for (int i = 0; i < 100; ++i) {
    const double alpha = gen.uniform(-1.0, 1.0);
    const double beta = alpha + gen.uniform(0.0, 1.0);
    const double direct = count_zeros(z, {alpha, beta});
    const double formula = twog * (beta - alpha) + s_n(z, 0, beta) - s_n(z, 0, alpha);
    CHECK(direct == doctest::Approx(formula).epsilon(1e-8));
  }
  // Endpoints count one half.
  CHECK(count_zeros(z, {z.theta[0], z.theta[0] + 0.001}) == doctest::Approx(0.5 + (z.theta[1] - z.theta[0] < 0.001)));
  CHECK(count_zeros(z, {0.3, 1.3}) == twog);
  CHECK_THROWS_AS(count_zeros(z, {0.5, 0.2}), ConfigError);
}

TEST_CASE("constants: exact match for odd n, strict inequality for even n") {
  for (int n : {1, 3, 5, 7}) {
    const auto A = constants_A(n);
    const auto C = constants_C(n);
    CHECK(A.minus == doctest::Approx(C.minus).epsilon(1e-10));
    CHECK(A.plus == doctest::Approx(C.plus).epsilon(1e-10));
  }
  for (int n : {2, 4, 6}) {
    const auto A = constants_A(n);
    const auto C = constants_C(n);
    CHECK(A.minus < C.minus);
    CHECK(A.plus < C.plus);
    const double hi = 1.0 / (M_PI * std::pow(2.0, n + 1));
    CHECK(A.plus > (1.0 - std::pow(3.0, -n)) * hi);
    CHECK(A.plus < hi);
  }
  CHECK(constants_A(1).minus == doctest::Approx(M_PI / 24));
  CHECK(constants_A(1).plus == doctest::Approx(M_PI / 48));
}
