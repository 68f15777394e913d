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

// The quadratic residue symbol over F_q[x], the character chi_D(f) = (D/f),
// and the character / von Mangoldt sums feeding the L-polynomial.

#pragma once

#include <cstdint>
#include <memory>

#include "hyperell/fq_arith.hpp"

namespace hyperell {

/// (f / modulus) in {-1, 0, +1}, extended multiplicatively over the prime
/// factorization of the monic modulus. Evaluated by Euclidean descent with
/// quadratic reciprocity; a non-monic remainder with leading coefficient c
/// contributes chi_q(c)^{deg modulus}. Throws DomainError on a zero modulus.
int residue_symbol(const Poly& f, const Poly& modulus);

/// The quadratic character chi_D attached to D in H_d, d = 2g + 1.
///
/// Copies share a lazily filled cache of chi on the primes of each degree;
/// the cache is populated once per degree and safe for concurrent readers.
class Character {
 public:
  /// Throws ConfigError if D is not squarefree or has even degree.
  /// `primes` is required only for the Lambda-weighted sums.
  explicit Character(MonicPoly D, std::shared_ptr<const PrimeTable> primes = nullptr);

  const Field& field() const noexcept { return D_.field(); }
  const MonicPoly& D() const noexcept { return D_; }
  int degree() const noexcept { return D_.degree(); }
  int genus() const noexcept { return (D_.degree() - 1) / 2; }
  const std::shared_ptr<const PrimeTable>& prime_table() const noexcept { return primes_; }

  /// chi_D(f) = (D / f) for monic f.
  int operator()(const MonicPoly& f) const { return residue_symbol(D_.poly(), f.poly()); }

  /// chi_D on the index-th prime of degree m in the prime table (cached).
  int on_prime(int m, std::size_t index) const;

 private:
  struct Cache;
  MonicPoly D_;
  std::shared_ptr<const PrimeTable> primes_;
  std::shared_ptr<Cache> cache_;
};

int chi(const Character& character, const MonicPoly& f);

/// Sum over monic f of degree k of Lambda(f) = sum_{m | k} m * #primes(m).
/// Equals q^k. Throws ResourceError if the table does not reach degree k.
std::int64_t lambda_sum(const PrimeTable& table, int k);

/// Sum over monic f of degree k of chi_D(f) Lambda(f), via prime powers P^e
/// with e deg P = k, each weighted deg P * chi_D(P)^e.
std::int64_t twisted_lambda_sum(const Character& character, int k);

/// c_k = sum over monic f of degree k of chi_D(f), by direct summation.
std::int64_t coefficient_sum(const Character& character, int k);

}  // namespace hyperell
