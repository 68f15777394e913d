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

// Arithmetic in F_q (q an odd prime) and in F_q[x].
//
// Polynomials are dense residue vectors, lowest degree first. The zero
// polynomial has an empty coefficient vector and degree -1. Degrees in this
// project stay below a few dozen, so schoolbook algorithms are used throughout.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperell/errors.hpp"

namespace hyperell {

/// The prime field F_q. Construction rejects even or composite q.
class Field {
 public:
  explicit Field(std::uint32_t q);

  std::uint32_t q() const noexcept { return q_; }

  std::uint32_t reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % static_cast<std::int64_t>(q_);
    return static_cast<std::uint32_t>(r < 0 ? r + q_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= q_ ? s - q_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + q_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; throws DomainError for 0.
  std::uint32_t inv(std::uint32_t a) const;
  /// Quadratic character a^{(q-1)/2} of F_q as -1, 0 or +1.
  int quadratic_character(std::uint32_t a) const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t q_;
};

/// Deterministic primality test for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// General polynomial over F_q, normalized so the leading coefficient is nonzero.
class Poly {
 public:
  Poly(Field field, std::vector<std::uint32_t> coeffs);
  Poly(Field field, std::initializer_list<std::int64_t> coeffs);

  static Poly zero(Field field) { return Poly(field, std::vector<std::uint32_t>{}); }
  static Poly constant(Field field, std::int64_t c);
  static Poly monomial(Field field, int degree, std::uint32_t c = 1);

  const Field& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  std::uint32_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  /// Coefficient of x^i; zero beyond the degree.
  std::uint32_t operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0;
  }
  std::span<const std::uint32_t> coeffs() const noexcept { return coeffs_; }

  Poly derivative() const;
  /// Divide by the leading coefficient. Throws DomainError on the zero polynomial.
  Poly monic() const;
  Poly scaled(std::uint32_t c) const;
  std::uint32_t evaluate(std::uint32_t x) const noexcept;

  /// "x^3+2x+1" style rendering, coefficients in [0, q).
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() noexcept;

  Field field_;
  std::vector<std::uint32_t> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

/// Product of two polynomials; throws ConfigError when the fields differ.
Poly poly_mul(const Poly& a, const Poly& b);

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// a = quotient * b + remainder with deg remainder < deg b.
DivMod poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);
Poly poly_powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus);

/// A monic polynomial of degree >= 0.
class MonicPoly {
 public:
  /// Throws DomainError unless p is monic.
  explicit MonicPoly(Poly p);

  /// The monic polynomial x^degree + sum_i digit_i(code) x^i, digits base q.
  static MonicPoly from_code(Field field, int degree, std::uint64_t code);
  static MonicPoly one(Field field) { return MonicPoly(Poly::constant(field, 1)); }

  const Poly& poly() const noexcept { return p_; }
  operator const Poly&() const noexcept { return p_; }
  const Field& field() const noexcept { return p_.field(); }
  int degree() const noexcept { return p_.degree(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return p_[i]; }
  /// Inverse of from_code.
  std::uint64_t code() const noexcept;
  std::string to_string() const { return p_.to_string(); }

  /// Enumeration order: by degree, then lexicographic from the top
  /// coefficient down (the constant term varies fastest).
  std::strong_ordering operator<=>(const MonicPoly& other) const noexcept;
  bool operator==(const MonicPoly& other) const noexcept { return p_ == other.p_; }

 private:
  Poly p_;
};

MonicPoly operator*(const MonicPoly& a, const MonicPoly& b);

/// Parse "x^3+2x+1", "2*x^2 - x + 3" and similar; coefficients reduced mod q.
Poly parse_poly(Field field, std::string_view text);
/// As parse_poly, additionally requiring a monic result.
MonicPoly parse_monic(Field field, std::string_view text);

/// True iff gcd(f, f') = 1.
bool is_squarefree(const MonicPoly& f);
/// Ben-Or test: gcd(x^{q^i} - x, f) = 1 for all i <= deg f / 2.
bool is_irreducible(const MonicPoly& f);

/// q^exponent, throwing ResourceError if it does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t q, int exponent);

/// Number of monic squarefree polynomials of degree d over F_q: q^d - q^{d-1}.
std::uint64_t hd_cardinality(std::uint32_t q, int d);

/// Streams the monic polynomials of a fixed degree in enumeration order,
/// optionally restricted to a block [begin, end) of codes.
class MonicRange {
 public:
  MonicRange(Field field, int degree);
  MonicRange(Field field, int degree, std::uint64_t begin, std::uint64_t end);

  std::optional<MonicPoly> next();
  std::uint64_t size() const noexcept { return end_ - begin_; }

 private:
  Field field_;
  int degree_;
  std::uint64_t begin_;
  std::uint64_t cursor_;
  std::uint64_t end_;
};

/// Streams H_d: the monic squarefree polynomials of degree d, strictly
/// increasing in enumeration order. Throws ConfigError for d < 2.
class HdStream {
 public:
  HdStream(Field field, int degree);
  HdStream(Field field, int degree, std::uint64_t begin, std::uint64_t end);

  std::optional<MonicPoly> next();

 private:
  MonicRange range_;
};

/// All of H_d in enumeration order.
std::vector<MonicPoly> enumerate_hd(Field field, int degree);

/// (1/m) sum_{e | m} mu(e) q^{m/e}: the number of monic irreducibles of degree m.
std::uint64_t necklace_count(std::uint32_t q, int m);

/// All monic irreducible polynomials of degree 1..cap, stored by code.
class PrimeTable {
 public:
  /// Default budget: 2^27 monics at the top degree.
  static constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 27;

  /// Sieves the irreducibles and checks every per-degree count against the
  /// necklace formula. Throws ResourceError naming the first degree whose
  /// q^m monics exceed the budget.
  PrimeTable(Field field, int max_degree, std::uint64_t budget = kDefaultBudget);

  const Field& field() const noexcept { return field_; }
  int max_degree() const noexcept { return cap_; }
  std::size_t count(int m) const;
  /// Codes of the primes of degree m, ascending.
  std::span<const std::uint64_t> codes(int m) const;
  MonicPoly prime(int m, std::size_t index) const;
  std::vector<MonicPoly> primes(int m) const;

  /// Re-checks every entry with is_irreducible. Returns the number checked.
  std::size_t verify_irreducibility() const;

 private:
  Field field_;
  int cap_;
  std::vector<std::vector<std::uint64_t>> codes_;
};

}  // namespace hyperell
