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

// Test-only reference implementations. They share no code with the library:
// polynomials here are plain int64 vectors with their own schoolbook
// arithmetic, primes come from trial division, residue symbols from the Euler
// criterion or from enumerating squares, and integrals from Simpson's rule.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using OPoly = std::vector<std::int64_t>;  // lowest degree first, trimmed

inline std::int64_t md(std::int64_t a, std::int64_t q) {
  a %= q;
  return a < 0 ? a + q : a;
}

inline void trim(OPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const OPoly& a) { return static_cast<int>(a.size()) - 1; }

inline OPoly from_code(std::int64_t q, int degree, std::uint64_t code) {
  OPoly p(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    p[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(q));
    code /= static_cast<std::uint64_t>(q);
  }
  p.back() = 1;
  return p;
}

inline std::uint64_t code_of(const OPoly& f, std::int64_t q) {
  std::uint64_t c = 0;
  for (int i = deg(f) - 1; i >= 0; --i) c = c * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(f[static_cast<std::size_t>(i)]);
  return c;
}

inline std::uint64_t count_monic(std::int64_t q, int degree) {
  std::uint64_t n = 1;
  for (int i = 0; i < degree; ++i) n *= static_cast<std::uint64_t>(q);
  return n;
}

inline OPoly mul(const OPoly& a, const OPoly& b, std::int64_t q) {
  if (a.empty() || b.empty()) return {};
  OPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = md(r[i + j] + a[i] * b[j], q);
  }
  trim(r);
  return r;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t q) {
  a = md(a, q);
  for (std::int64_t x = 1; x < q; ++x) {
    if (md(a * x, q) == 1) return x;
  }
  return 0;
}

/// Remainder of a by nonzero b, with quotient optionally returned.
inline OPoly rem(OPoly a, const OPoly& b, std::int64_t q, OPoly* quotient = nullptr) {
  trim(a);
  const int db = deg(b);
  const std::int64_t inv = inverse(b.back(), q);
  OPoly quo(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (deg(a) >= db) {
    const int shift = deg(a) - db;
    const std::int64_t t = md(a.back() * inv, q);
    quo[static_cast<std::size_t>(shift)] = t;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(shift + j)];
      slot = md(slot - t * b[static_cast<std::size_t>(j)], q);
    }
    trim(a);
  }
  if (quotient) {
    trim(quo);
    *quotient = quo;
  }
  return a;
}

inline OPoly powmod(OPoly base, std::uint64_t e, const OPoly& m, std::int64_t q) {
  OPoly r{1};
  base = rem(base, m, q);
  while (e) {
    if (e & 1) r = rem(mul(r, base, q), m, q);
    base = rem(mul(base, base, q), m, q);
    e >>= 1;
  }
  return r;
}

/// True iff no monic polynomial of degree 1..deg/2 divides f.
inline bool irreducible_trial(const OPoly& f, std::int64_t q) {
  const int n = deg(f);
  if (n < 1) return false;
  for (int m = 1; 2 * m <= n; ++m) {
    for (std::uint64_t c = 0; c < count_monic(q, m); ++c) {
      if (rem(f, from_code(q, m, c), q).empty()) return false;
    }
  }
  return true;
}

/// Monic prime factorization by trial division: (prime, exponent) pairs.
inline std::vector<std::pair<OPoly, int>> factor(OPoly f, std::int64_t q) {
  std::vector<std::pair<OPoly, int>> out;
  for (int m = 1; deg(f) >= 1 && m <= deg(f); ++m) {
    if (2 * m > deg(f)) {
      out.push_back({f, 1});
      f = {1};
      break;
    }
    for (std::uint64_t c = 0; c < count_monic(q, m) && deg(f) >= m; ++c) {
      const OPoly p = from_code(q, m, c);
      int e = 0;
      for (;;) {
        OPoly quo;
        if (!rem(f, p, q, &quo).empty()) break;
        f = quo;
        ++e;
      }
      if (e > 0) out.push_back({p, e});
    }
  }
  if (deg(f) >= 1) out.push_back({f, 1});
  return out;
}

inline bool squarefree_trial(const OPoly& f, std::int64_t q) {
  for (const auto& [p, e] : factor(f, q)) {
    if (e > 1) return false;
  }
  return true;
}

/// von Mangoldt: deg P if f = P^e, else 0.
inline int mangoldt(const OPoly& f, std::int64_t q) {
  const auto fac = factor(f, q);
  return fac.size() == 1 ? deg(fac.front().first) : 0;
}

/// (a / P) for P monic irreducible by the Euler criterion a^{(|P|-1)/2}.
inline int legendre_euler(const OPoly& a, const OPoly& P, std::int64_t q) {
  const OPoly r = rem(a, P, q);
  if (r.empty()) return 0;
  const std::uint64_t norm = count_monic(q, deg(P));
  const OPoly e = powmod(r, (norm - 1) / 2, P, q);
  if (e.size() == 1 && e[0] == 1) return 1;
  if (e.size() == 1 && e[0] == q - 1) return -1;
  return 2;  // impossible for irreducible P
}

/// (a / P) by listing every square modulo P.
inline int legendre_squares(const OPoly& a, const OPoly& P, std::int64_t q) {
  const OPoly r = rem(a, P, q);
  if (r.empty()) return 0;
  const int n = deg(P);
  const std::uint64_t total = count_monic(q, n);
  for (std::uint64_t code = 1; code < total; ++code) {
    OPoly h(static_cast<std::size_t>(n), 0);
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      h[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(q));
      c /= static_cast<std::uint64_t>(q);
    }
    trim(h);
    if (rem(mul(h, h, q), P, q) == r) return 1;
  }
  return -1;
}

/// chi_D(f) = (D / f) through the factorization of f.
inline int chi(const OPoly& D, const OPoly& f, std::int64_t q) {
  int s = 1;
  for (const auto& [p, e] : factor(f, q)) {
    const int l = legendre_euler(D, p, q);
    for (int i = 0; i < e; ++i) s *= l;
  }
  return s;
}

/// sum over monic f of degree k of chi_D(f).
inline std::int64_t char_sum(const OPoly& D, int k, std::int64_t q) {
  std::int64_t s = 0;
  for (std::uint64_t c = 0; c < count_monic(q, k); ++c) s += chi(D, from_code(q, k, c), q);
  return s;
}

/// sum over monic f of degree k of chi_D(f) Lambda(f).
inline std::int64_t twisted_lambda(const OPoly& D, int k, std::int64_t q) {
  std::int64_t s = 0;
  for (std::uint64_t c = 0; c < count_monic(q, k); ++c) {
    const OPoly f = from_code(q, k, c);
    const auto fac = factor(f, q);
    if (fac.size() != 1) continue;
    s += deg(fac.front().first) * chi(D, f, q);
  }
  return s;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Integral over [0, 1] of a function smooth between the given breakpoints.
inline double simpson_pieces(const std::function<double(double)>& f, std::vector<double> breaks, int n = 400) {
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (b - a < 1e-15) continue;
    // Sample far enough inside the piece that jump midpoints are not hit.
    const double eps = 1e-9;
    total += simpson(f, a + eps, b - eps, n) + (f(a + eps) + f(b - eps)) * eps;
  }
  return total;
}

/// log |L(q^{-1/2} e(theta))| by Horner in complex arithmetic.
inline double log_abs_L(const std::vector<std::int64_t>& c, double q, double theta) {
  const std::complex<double> u = std::polar(1.0 / std::sqrt(q), 2.0 * M_PI * theta);
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + static_cast<double>(*it);
  return std::log(std::abs(acc));
}

/// Bernoulli polynomial B_n(x) from the recurrence on Bernoulli numbers,
/// evaluated in long double.
inline long double bernoulli_poly(int n, long double x) {
  std::vector<long double> B(static_cast<std::size_t>(n) + 1, 0.0L);
  B[0] = 1.0L;
  for (int m = 1; m <= n; ++m) {
    long double s = 0.0L;
    long double binom = 1.0L;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += binom * B[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    B[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  long double r = 0.0L;
  long double binom = 1.0L;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    r += binom * B[static_cast<std::size_t>(k)] * std::pow(x, static_cast<long double>(n - k));
    binom = binom * (n - k) / (k + 1);
  }
  return r;
}

/// Seeded draws for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  OPoly poly(std::int64_t q, int degree) {
    OPoly p(static_cast<std::size_t>(degree) + 1);
    for (auto& c : p) c = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(q)));
    trim(p);
    return p;
  }
  OPoly monic(std::int64_t q, int degree) { return from_code(q, degree, below(count_monic(q, degree))); }
  OPoly squarefree_monic(std::int64_t q, int degree) {
    for (;;) {
      OPoly f = monic(q, degree);
      if (squarefree_trial(f, q)) return f;
    }
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
