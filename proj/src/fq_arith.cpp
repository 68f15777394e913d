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

#include "hyperell/fq_arith.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

namespace hyperell {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

void require_same_field(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) {
    throw ConfigError("polynomials over different fields: F_" + std::to_string(a.field().q()) +
                      " and F_" + std::to_string(b.field().q()));
  }
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Field

Field::Field(std::uint32_t q) : q_(q) {
  if (q < 3 || q >= (std::uint32_t{1} << 31)) {
    throw ConfigError("field modulus must satisfy 3 <= q < 2^31, got " + std::to_string(q));
  }
  if (q % 2 == 0 || !is_prime_u64(q)) {
    throw ConfigError("field modulus must be an odd prime, got " + std::to_string(q));
  }
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  return static_cast<std::uint32_t>(powmod64(a, e, q_));
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  return pow(a, q_ - 2);
}

int Field::quadratic_character(std::uint32_t a) const noexcept {
  if (a % q_ == 0) return 0;
  return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(Field field, std::vector<std::uint32_t> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= field_.q();
  trim();
}

Poly::Poly(Field field, std::initializer_list<std::int64_t> coeffs) : field_(field) {
  coeffs_.reserve(coeffs.size());
  for (auto c : coeffs) coeffs_.push_back(field_.reduce(c));
  trim();
}

Poly Poly::constant(Field field, std::int64_t c) { return Poly(field, {c}); }

Poly Poly::monomial(Field field, int degree, std::uint32_t c) {
  std::vector<std::uint32_t> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(field, std::move(v));
}

void Poly::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return zero(field_);
  std::vector<std::uint32_t> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = field_.mul(coeffs_[i], field_.reduce(static_cast<std::int64_t>(i)));
  }
  return Poly(field_, std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) throw DomainError("cannot normalize the zero polynomial");
  if (leading() == 1) return *this;
  return scaled(field_.inv(leading()));
}

Poly Poly::scaled(std::uint32_t c) const {
  std::vector<std::uint32_t> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = field_.mul(coeffs_[i], c);
  return Poly(field_, std::move(v));
}

std::uint32_t Poly::evaluate(std::uint32_t x) const noexcept {
  std::uint32_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
  return acc;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    std::uint32_t c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += 'x';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  std::vector<std::uint32_t> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a[i], b[i]);
  return Poly(f, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  std::vector<std::uint32_t> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a[i], b[i]);
  return Poly(f, std::move(v));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return Poly::zero(f);
  auto ac = a.coeffs();
  auto bc = b.coeffs();
  std::vector<std::uint32_t> v(ac.size() + bc.size() - 1, 0);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i] == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) v[i + j] = f.add(v[i + j], f.mul(ac[i], bc[j]));
  }
  return Poly(f, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

DivMod poly_divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const Field& f = a.field();
  if (a.degree() < b.degree()) return {Poly::zero(f), a};
  std::vector<std::uint32_t> r(a.coeffs().begin(), a.coeffs().end());
  auto bc = b.coeffs();
  const int db = b.degree();
  const std::uint32_t lead_inv = f.inv(b.leading());
  std::vector<std::uint32_t> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int i = a.degree(); i >= db; --i) {
    std::uint32_t c = r[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    std::uint32_t t = f.mul(c, lead_inv);
    quo[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = f.sub(slot, f.mul(t, bc[static_cast<std::size_t>(j)]));
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(f, std::move(quo)), Poly(f, std::move(r))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).remainder; }

Poly poly_gcd(Poly a, Poly b) {
  require_same_field(a, b);
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly poly_powmod(const Poly& base, std::uint64_t exponent, const Poly& modulus) {
  Poly result = poly_mod(Poly::constant(base.field(), 1), modulus);
  Poly b = poly_mod(base, modulus);
  while (exponent) {
    if (exponent & 1) result = poly_mod(result * b, modulus);
    exponent >>= 1;
    if (exponent) b = poly_mod(b * b, modulus);
  }
  return result;
}

// ---------------------------------------------------------------------------
// MonicPoly

MonicPoly::MonicPoly(Poly p) : p_(std::move(p)) {
  if (!p_.is_monic()) throw DomainError("polynomial is not monic: " + p_.to_string());
}

MonicPoly MonicPoly::from_code(Field field, int degree, std::uint64_t code) {
  std::vector<std::uint32_t> v(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i) {
    v[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(code % field.q());
    code /= field.q();
  }
  v.back() = 1;
  return MonicPoly(Poly(field, std::move(v)));
}

std::uint64_t MonicPoly::code() const noexcept {
  std::uint64_t c = 0;
  for (int i = degree() - 1; i >= 0; --i) c = c * field().q() + p_[static_cast<std::size_t>(i)];
  return c;
}

std::strong_ordering MonicPoly::operator<=>(const MonicPoly& other) const noexcept {
  if (auto c = field().q() <=> other.field().q(); c != 0) return c;
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  for (int i = degree(); i >= 0; --i) {
    auto k = static_cast<std::size_t>(i);
    if (auto c = p_[k] <=> other.p_[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

MonicPoly operator*(const MonicPoly& a, const MonicPoly& b) { return MonicPoly(a.poly() * b.poly()); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(Field field, std::string_view text) : field_(field) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += static_cast<char>(std::tolower(ch));
    }
  }

  Poly parse() {
    if (s_.empty()) fail("empty polynomial");
    std::vector<std::uint32_t> acc;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [coeff, exponent] = term();
      if (acc.size() <= exponent) acc.resize(exponent + 1, 0);
      acc[exponent] = field_.add(acc[exponent], field_.reduce(sign * coeff));
    }
    return Poly(field_, std::move(acc));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse polynomial '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
  }

  bool number(std::int64_t& out) {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = (v * 10 + (peek() - '0')) % static_cast<std::int64_t>(field_.q());
      ++pos_;
      if (pos_ - start > 18) fail("number too long");
    }
    if (pos_ == start) return false;
    out = v;
    return true;
  }

  std::pair<std::int64_t, std::size_t> term() {
    std::int64_t coeff = 1;
    bool has_coeff = number(coeff);
    if (peek() == '*') {
      if (!has_coeff) fail("dangling '*'");
      ++pos_;
      if (peek() != 'x') fail("expected 'x' after '*'");
    }
    if (peek() != 'x') {
      if (!has_coeff) fail("expected a term");
      return {coeff, 0};
    }
    ++pos_;
    std::size_t exponent = 1;
    if (peek() == '^') {
      ++pos_;
      std::size_t start = pos_;
      std::size_t e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + static_cast<std::size_t>(peek() - '0');
        ++pos_;
        if (e > 4096) fail("exponent too large");
      }
      if (pos_ == start) fail("expected exponent");
      exponent = e;
    }
    return {coeff, exponent};
  }

  Field field_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(Field field, std::string_view text) { return PolyParser(field, text).parse(); }

MonicPoly parse_monic(Field field, std::string_view text) {
  Poly p = parse_poly(field, text);
  if (!p.is_monic()) throw ParseError("polynomial is not monic: " + std::string(text));
  return MonicPoly(std::move(p));
}

// ---------------------------------------------------------------------------
// Squarefree / irreducible

bool is_squarefree(const MonicPoly& f) {
  Poly d = f.poly().derivative();
  if (d.is_zero()) return f.degree() == 0;
  return poly_gcd(f.poly(), d).degree() == 0;
}

bool is_irreducible(const MonicPoly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Field& fld = f.field();
  const Poly x = Poly::monomial(fld, 1);
  Poly h = poly_mod(x, f);
  for (int i = 1; i <= n / 2; ++i) {
    h = poly_powmod(h, fld.q(), f);
    if (poly_gcd(h - x, f.poly()).degree() != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t checked_pow(std::uint64_t q, int exponent) {
  std::uint64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / 2 / q) {
      throw ResourceError("q^" + std::to_string(exponent) + " overflows 63 bits", exponent);
    }
    r *= q;
  }
  return r;
}

std::uint64_t hd_cardinality(std::uint32_t q, int d) {
  if (d < 1) return 1;
  return checked_pow(q, d) - checked_pow(q, d - 1);
}

MonicRange::MonicRange(Field field, int degree)
    : MonicRange(field, degree, 0, checked_pow(field.q(), degree)) {}

MonicRange::MonicRange(Field field, int degree, std::uint64_t begin, std::uint64_t end)
    : field_(field), degree_(degree), begin_(begin), cursor_(begin), end_(end) {
  if (degree < 0) throw ConfigError("negative degree");
  end_ = std::min(end_, checked_pow(field.q(), degree));
  if (begin_ > end_) begin_ = cursor_ = end_;
}

std::optional<MonicPoly> MonicRange::next() {
  if (cursor_ >= end_) return std::nullopt;
  return MonicPoly::from_code(field_, degree_, cursor_++);
}

namespace {
int checked_hd_degree(int degree) {
  if (degree < 2) throw ConfigError("H_d requires d >= 2, got " + std::to_string(degree));
  return degree;
}
}  // namespace

HdStream::HdStream(Field field, int degree) : range_(field, checked_hd_degree(degree)) {}

HdStream::HdStream(Field field, int degree, std::uint64_t begin, std::uint64_t end)
    : range_(field, checked_hd_degree(degree), begin, end) {}

std::optional<MonicPoly> HdStream::next() {
  while (auto f = range_.next()) {
    if (is_squarefree(*f)) return f;
  }
  return std::nullopt;
}

std::vector<MonicPoly> enumerate_hd(Field field, int degree) {
  HdStream stream(field, degree);
  std::vector<MonicPoly> out;
  out.reserve(hd_cardinality(field.q(), degree));
  while (auto f = stream.next()) out.push_back(std::move(*f));
  return out;
}

// ---------------------------------------------------------------------------
// Prime table

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

std::uint64_t necklace_count(std::uint32_t q, int m) {
  if (m < 1) throw ConfigError("necklace count needs m >= 1");
  std::int64_t total = 0;
  for (int e = 1; e <= m; ++e) {
    if (m % e != 0) continue;
    total += moebius(e) * static_cast<std::int64_t>(checked_pow(q, m / e));
  }
  return static_cast<std::uint64_t>(total / m);
}

PrimeTable::PrimeTable(Field field, int max_degree, std::uint64_t budget)
    : field_(field), cap_(max_degree) {
  if (max_degree < 1) throw ConfigError("prime table needs max_degree >= 1");
  const std::uint32_t q = field.q();
  codes_.resize(static_cast<std::size_t>(max_degree) + 1);

  std::vector<std::uint32_t> a_coeffs;
  std::vector<std::uint32_t> b_coeffs;
  std::vector<std::uint64_t> prod;
  for (int m = 1; m <= max_degree; ++m) {
    std::uint64_t size = 0;
    try {
      size = checked_pow(q, m);
    } catch (const ResourceError&) {
      throw ResourceError("prime table degree " + std::to_string(m) + " exceeds the memory budget", m);
    }
    if (size > budget) {
      throw ResourceError("prime table degree " + std::to_string(m) + " needs " + std::to_string(size) +
                              " monics, budget is " + std::to_string(budget),
                          m);
    }
    // Sieve: mark every product of a prime of degree i <= m/2 with a monic
    // of degree m - i; the unmarked codes are the irreducibles.
    std::vector<bool> composite(size, false);
    prod.assign(static_cast<std::size_t>(m) + 1, 0);
    for (int i = 1; 2 * i <= m; ++i) {
      const int j = m - i;
      const std::uint64_t b_count = checked_pow(q, j);
      for (std::uint64_t a_code : codes_[static_cast<std::size_t>(i)]) {
        a_coeffs.assign(static_cast<std::size_t>(i) + 1, 0);
        std::uint64_t t = a_code;
        for (int k = 0; k < i; ++k) {
          a_coeffs[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(t % q);
          t /= q;
        }
        a_coeffs.back() = 1;
        b_coeffs.assign(static_cast<std::size_t>(j) + 1, 0);
        b_coeffs.back() = 1;
        for (std::uint64_t b_code = 0; b_code < b_count; ++b_code) {
          std::fill(prod.begin(), prod.end(), 0);
          for (int x = 0; x <= i; ++x) {
            const std::uint64_t ax = a_coeffs[static_cast<std::size_t>(x)];
            if (ax == 0) continue;
            for (int y = 0; y <= j; ++y) prod[static_cast<std::size_t>(x + y)] += ax * b_coeffs[static_cast<std::size_t>(y)];
          }
          std::uint64_t code = 0;
          for (int k = m - 1; k >= 0; --k) code = code * q + prod[static_cast<std::size_t>(k)] % q;
          composite[code] = true;
          // advance b to the next code, constant term fastest
          for (int k = 0; k < j; ++k) {
            auto& digit = b_coeffs[static_cast<std::size_t>(k)];
            if (++digit < q) break;
            digit = 0;
          }
        }
      }
    }
    auto& out = codes_[static_cast<std::size_t>(m)];
    for (std::uint64_t c = 0; c < size; ++c) {
      if (!composite[c]) out.push_back(c);
    }
    const std::uint64_t expected = necklace_count(q, m);
    if (out.size() != expected) {
      throw ConsistencyError("prime table degree " + std::to_string(m) + ": sieve found " +
                             std::to_string(out.size()) + " primes, necklace count is " + std::to_string(expected));
    }
  }
}

std::size_t PrimeTable::count(int m) const { return codes(m).size(); }

std::span<const std::uint64_t> PrimeTable::codes(int m) const {
  if (m < 1 || m > cap_) {
    throw ResourceError("prime table covers degrees 1.." + std::to_string(cap_) + ", requested " + std::to_string(m),
                        m);
  }
  return codes_[static_cast<std::size_t>(m)];
}

MonicPoly PrimeTable::prime(int m, std::size_t index) const {
  return MonicPoly::from_code(field_, m, codes(m)[index]);
}

std::vector<MonicPoly> PrimeTable::primes(int m) const {
  std::vector<MonicPoly> out;
  for (auto c : codes(m)) out.push_back(MonicPoly::from_code(field_, m, c));
  return out;
}

std::size_t PrimeTable::verify_irreducibility() const {
  std::size_t checked = 0;
  for (int m = 1; m <= cap_; ++m) {
    for (auto c : codes(m)) {
      if (!is_irreducible(MonicPoly::from_code(field_, m, c))) {
        throw ConsistencyError("prime table entry fails the irreducibility test: " +
                               MonicPoly::from_code(field_, m, c).to_string());
      }
      ++checked;
    }
  }
  return checked;
}

}  // namespace hyperell
