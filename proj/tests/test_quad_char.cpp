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

#include <memory>
#include <thread>

#include "hyperell/quad_char.hpp"
#include "oracles.hpp"

using namespace hyperell;

namespace {

Poly to_poly(Field f, const oracle::OPoly& p) {
  std::vector<std::uint32_t> v(p.begin(), p.end());
  return Poly(f, v);
}

MonicPoly to_monic(Field f, const oracle::OPoly& p) { return MonicPoly(to_poly(f, p)); }

}  // namespace

TEST_CASE("residue symbol on primes equals Euler criterion and square enumeration") {
  oracle::Gen gen(21);
  for (std::int64_t q : {3, 5, 7}) {
    const Field f(static_cast<std::uint32_t>(q));
    for (int trial = 0; trial < 150; ++trial) {
      const int m = 1 + static_cast<int>(gen.below(3));
      oracle::OPoly P;
      do {
        P = gen.monic(q, m);
      } while (!oracle::irreducible_trial(P, q));
      const auto a = gen.poly(q, static_cast<int>(gen.below(7)));
      const int expect = oracle::legendre_euler(a, P, q);
      CHECK(residue_symbol(to_poly(f, a), to_poly(f, P)) == expect);
      CHECK(oracle::legendre_squares(a, P, q) == expect);
    }
  }
}

TEST_CASE("property: residue symbol is multiplicative in the modulus and periodic in f") {
  oracle::Gen gen(22);
  const std::int64_t q = 5;
  const Field f(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen.poly(q, static_cast<int>(gen.below(6)));
    const auto m1 = gen.monic(q, 1 + static_cast<int>(gen.below(3)));
    const auto m2 = gen.monic(q, 1 + static_cast<int>(gen.below(3)));
    const int lhs = residue_symbol(to_poly(f, a), to_poly(f, oracle::mul(m1, m2, q)));
    CHECK(lhs == residue_symbol(to_poly(f, a), to_poly(f, m1)) * residue_symbol(to_poly(f, a), to_poly(f, m2)));
    const auto shift = oracle::mul(m1, gen.poly(q, 2), q);
    oracle::OPoly a2(std::max(a.size(), shift.size()), 0);
    for (std::size_t i = 0; i < a2.size(); ++i) {
      a2[i] = oracle::md((i < a.size() ? a[i] : 0) + (i < shift.size() ? shift[i] : 0), q);
    }
    oracle::trim(a2);
    CHECK(residue_symbol(to_poly(f, a2), to_poly(f, m1)) == residue_symbol(to_poly(f, a), to_poly(f, m1)));
  }
}

TEST_CASE("character equals the factorization oracle") {
  oracle::Gen gen(23);
  for (std::int64_t q : {3, 5}) {
    const Field f(static_cast<std::uint32_t>(q));
    for (int trial = 0; trial < 40; ++trial) {
      const auto D = gen.squarefree_monic(q, 5);
      const Character chi(to_monic(f, D));
      for (int k = 0; k < 20; ++k) {
        const auto g = gen.monic(q, 1 + static_cast<int>(gen.below(5)));
        CHECK(chi(to_monic(f, g)) == oracle::chi(D, g, q));
      }
    }
  }
  CHECK_THROWS_AS(Character(parse_monic(Field(3), "x^4+1")), ConfigError);
  CHECK_THROWS_AS(Character(parse_monic(Field(3), "x^3")), ConfigError);
  CHECK_THROWS_AS(residue_symbol(Poly(Field(3), {1}), Poly::zero(Field(3))), DomainError);
}

TEST_CASE("Lambda sums equal q^k and match the full-factorization oracle") {
  for (std::uint32_t q : {3u, 5u}) {
    const auto t = std::make_shared<const PrimeTable>(Field(q), 6);
    std::int64_t qk = 1;
    for (int k = 1; k <= 6; ++k) {
      qk *= q;
      CHECK(lambda_sum(*t, k) == qk);
    }
    std::int64_t brute = 0;
    for (std::uint64_t c = 0; c < oracle::count_monic(q, 3); ++c) brute += oracle::mangoldt(oracle::from_code(q, 3, c), q);
    CHECK(brute == static_cast<std::int64_t>(q) * q * q);
    CHECK_THROWS_AS(lambda_sum(*t, 7), ResourceError);
  }
}

TEST_CASE("twisted Lambda and coefficient sums equal the brute oracle") {
  oracle::Gen gen(24);
  const std::int64_t q = 3;
  const Field f(3);
  const auto table = std::make_shared<const PrimeTable>(f, 5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto D = gen.squarefree_monic(q, 5);
    const Character chi(to_monic(f, D), table);
    for (int k = 1; k <= 4; ++k) {
      CHECK(twisted_lambda_sum(chi, k) == oracle::twisted_lambda(D, k, q));
      CHECK(coefficient_sum(chi, k) == oracle::char_sum(D, k, q));
    }
    CHECK(coefficient_sum(chi, 5) == 0);  // deg f >= deg D kills the sum
  }
  const Character bare(parse_monic(f, "x^3+2x+1"));
  CHECK_THROWS_AS(twisted_lambda_sum(bare, 2), ConfigError);
}

TEST_CASE("character prime cache is safe under concurrent first use") {
  const Field f(3);
  const auto table = std::make_shared<const PrimeTable>(f, 6);
  const Character chi(parse_monic(f, "x^7+2x+1"), table);
  std::vector<std::int64_t> results(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) {
    pool.emplace_back([&, i] { results[static_cast<std::size_t>(i)] = twisted_lambda_sum(chi, 6); });
  }
  for (auto& t : pool) t.join();
  for (auto r : results) CHECK(r == results[0]);
}
