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

#include "hyperell/quad_char.hpp"

#include <mutex>
#include <utility>
#include <vector>

namespace hyperell {

namespace {

void trim(std::vector<std::uint32_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// a <- a mod b for monic b, in place.
void reduce_by_monic(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, const Field& f) {
  const int db = static_cast<int>(b.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    const std::uint32_t c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - db + j)];
      slot = f.sub(slot, f.mul(c, b[static_cast<std::size_t>(j)]));
    }
  }
  if (static_cast<int>(a.size()) > db) a.resize(static_cast<std::size_t>(db));
  trim(a);
}

}  // namespace

int residue_symbol(const Poly& f, const Poly& modulus) {
  if (modulus.is_zero()) throw DomainError("residue symbol with zero modulus");
  if (!modulus.is_monic()) throw DomainError("residue symbol modulus must be monic: " + modulus.to_string());
  if (f.field() != modulus.field()) throw ConfigError("residue symbol over mismatched fields");

  const Field& field = f.field();
  const bool half_odd = ((field.q() - 1) / 2) % 2 == 1;
  std::vector<std::uint32_t> a(f.coeffs().begin(), f.coeffs().end());
  std::vector<std::uint32_t> b(modulus.coeffs().begin(), modulus.coeffs().end());
  int result = 1;
  for (;;) {
    const int db = static_cast<int>(b.size()) - 1;
    if (db == 0) return result;
    reduce_by_monic(a, b, field);
    if (a.empty()) return 0;
    const std::uint32_t lead = a.back();
    if (lead != 1) {
      if ((db & 1) && field.quadratic_character(lead) < 0) result = -result;
      const std::uint32_t inv = field.inv(lead);
      for (auto& c : a) c = field.mul(c, inv);
    }
    const int da = static_cast<int>(a.size()) - 1;
    // (a/b) = (b/a) (-1)^{(q-1)/2 deg a deg b} for coprime monic a, b; when
    // they share a factor the descent reaches a zero remainder either way.
    if (half_odd && (da & 1) && (db & 1)) result = -result;
    std::swap(a, b);
  }
}

struct Character::Cache {
  explicit Cache(int degrees) : flags(new std::once_flag[static_cast<std::size_t>(degrees) + 1]), values(static_cast<std::size_t>(degrees) + 1) {}
  std::unique_ptr<std::once_flag[]> flags;
  std::vector<std::vector<std::int8_t>> values;
};

Character::Character(MonicPoly D, std::shared_ptr<const PrimeTable> primes)
    : D_(std::move(D)), primes_(std::move(primes)) {
  if (D_.degree() % 2 == 0) {
    throw ConfigError("even-degree D is not supported (d = 2g+2 ensemble): " + D_.to_string());
  }
  if (!is_squarefree(D_)) throw ConfigError("D is not squarefree: " + D_.to_string());
  if (primes_) {
    if (primes_->field() != D_.field()) throw ConfigError("prime table and D are over different fields");
    cache_ = std::make_shared<Cache>(primes_->max_degree());
  }
}

int Character::on_prime(int m, std::size_t index) const {
  if (!primes_) throw ConfigError("character has no prime table attached");
  auto codes = primes_->codes(m);
  auto slot = static_cast<std::size_t>(m);
  std::call_once(cache_->flags[slot], [&] {
    std::vector<std::int8_t> v(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
      v[i] = static_cast<std::int8_t>((*this)(MonicPoly::from_code(field(), m, codes[i])));
    }
    cache_->values[slot] = std::move(v);
  });
  return cache_->values[slot][index];
}

int chi(const Character& character, const MonicPoly& f) { return character(f); }

std::int64_t lambda_sum(const PrimeTable& table, int k) {
  if (k < 1) throw ConfigError("lambda_sum needs k >= 1");
  if (k > table.max_degree()) {
    throw ResourceError("prime table cap " + std::to_string(table.max_degree()) + " is below k = " + std::to_string(k), k);
  }
  std::int64_t total = 0;
  for (int m = 1; m <= k; ++m) {
    if (k % m == 0) total += static_cast<std::int64_t>(m) * static_cast<std::int64_t>(table.count(m));
  }
  return total;
}

std::int64_t twisted_lambda_sum(const Character& character, int k) {
  if (k < 1) throw ConfigError("twisted_lambda_sum needs k >= 1");
  const auto& table = character.prime_table();
  if (!table) throw ConfigError("character has no prime table attached");
  if (k > table->max_degree()) {
    throw ResourceError("prime table cap " + std::to_string(table->max_degree()) + " is below k = " + std::to_string(k), k);
  }
  std::int64_t total = 0;
  for (int m = 1; m <= k; ++m) {
    if (k % m != 0) continue;
    const int e = k / m;
    const std::size_t n = table->count(m);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int v = character.on_prime(m, i);
      s += (e % 2 == 0) ? v * v : v;
    }
    total += m * s;
  }
  return total;
}

std::int64_t coefficient_sum(const Character& character, int k) {
  if (k < 0) throw ConfigError("coefficient_sum needs k >= 0");
  MonicRange range(character.field(), k);
  std::int64_t total = 0;
  while (auto f = range.next()) total += character(*f);
  return total;
}

}  // namespace hyperell
