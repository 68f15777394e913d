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

// The L-polynomial L(u, chi_D) = sum_k c_k u^k of degree 2g, its unitarized
// real form on the critical circle |u| = q^{-1/2}, and the zero angles.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hyperell/quad_char.hpp"

namespace hyperell {

struct LPolynomial {
  std::uint32_t q = 0;
  int genus = 0;
  std::string D;
  /// c_0 .. c_{2g}
  std::vector<std::int64_t> c;

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }
};

/// c_0..c_g by direct character sums; c_{g+1}..c_{2g} both from the
/// functional equation and by direct summation. Throws ConsistencyError
/// when the two routes disagree.
LPolynomial compute_lpolynomial(const Character& character);

/// Checks c_0 = 1 and c_{2g-k} = q^{g-k} c_k as exact integers.
bool has_functional_equation_symmetry(const LPolynomial& L);

/// Xi(theta) = a_0 + sum_{m=1}^g a_m cos(2 pi m theta), equal to
/// z^{-g} L(q^{-1/2} z) at z = e(theta).
class CosinePoly {
 public:
  explicit CosinePoly(std::vector<double> a) : a_(std::move(a)) {}

  const std::vector<double>& coefficients() const noexcept { return a_; }
  int degree() const noexcept { return static_cast<int>(a_.size()) - 1; }
  double mean() const noexcept { return a_.empty() ? 0.0 : a_[0]; }
  /// Sum of |a_m|, an upper bound for |Xi|.
  double scale() const noexcept;

  double operator()(double theta) const noexcept { return derivative(theta, 0); }
  /// order-th derivative in theta.
  double derivative(double theta, int order) const noexcept;

 private:
  std::vector<double> a_;
};

CosinePoly unitarize(const LPolynomial& L);

struct ZeroAngles {
  std::uint32_t q = 0;
  int genus = 0;
  /// 2g angles in [0, 1), sorted, repeated according to multiplicity.
  std::vector<double> theta;
  /// max |Xi(theta_j)| / scale(Xi) after polishing.
  double residual = 0.0;
  /// Grid factor that finally accounted for all zeros.
  int grid_factor = 0;
};

/// Locates the 2g zeros of Xi over [0, 1/2] on a grid of
/// grid_factor * (2g + 2) cells, refines sign changes by bisection and
/// Newton, detects tangential (even multiplicity) zeros through critical
/// points of Xi, and mirrors to (1/2, 1). The grid is doubled up to a factor
/// of 1024; after that RootIsolationError carries the suspect cells.
ZeroAngles find_zero_angles(const LPolynomial& L, int grid_factor = 16);

/// sum_j e(k theta_j). Throws ConsistencyError if the imaginary part exceeds 1e-9.
std::complex<double> power_sum(const ZeroAngles& zeros, int k);

/// Coefficients of prod_j (1 - q^{1/2} e(-theta_j) u).
std::vector<std::complex<double>> reconstruct_coefficients(const ZeroAngles& zeros);

/// max_k |reconstructed c_k - c_k| / max_k |c_k|.
double reconstruction_error(const ZeroAngles& zeros, const LPolynomial& L);

/// All complex roots of sum_k coeffs[k] u^k by Aberth-Ehrlich iteration in
/// extended precision. Used as an independent check on the zero finder.
std::vector<std::complex<long double>> aberth_roots(const std::vector<long double>& coeffs);

/// max over roots u of | |u| q^{1/2} - 1 |, from aberth_roots. Roots that
/// coalesce within 1e-5 are replaced by their cluster mean before measuring.
double rh_radius_error(const LPolynomial& L);

nlohmann::json to_json(const LPolynomial& L);
nlohmann::json to_json(const ZeroAngles& zeros);

}  // namespace hyperell
