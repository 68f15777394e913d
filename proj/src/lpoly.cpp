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

#include "hyperell/lpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hyperell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

LPolynomial compute_lpolynomial(const Character& character) {
  const int g = character.genus();
  const std::int64_t q = character.field().q();
  LPolynomial L;
  L.q = character.field().q();
  L.genus = g;
  L.D = character.D().to_string();
  L.c.assign(static_cast<std::size_t>(2 * g) + 1, 0);
  for (int k = 0; k <= g; ++k) L.c[static_cast<std::size_t>(k)] = coefficient_sum(character, k);
  for (int k = g + 1; k <= 2 * g; ++k) {
    const std::int64_t mirrored = ipow(q, k - g) * L.c[static_cast<std::size_t>(2 * g - k)];
    const std::int64_t direct = coefficient_sum(character, k);
    if (mirrored != direct) {
      throw ConsistencyError("functional equation violated for D = " + L.D + " at k = " + std::to_string(k) +
                             ": direct " + std::to_string(direct) + ", mirrored " + std::to_string(mirrored));
    }
    L.c[static_cast<std::size_t>(k)] = direct;
  }
  if (L.c[0] != 1) throw ConsistencyError("c_0 != 1 for D = " + L.D);
  return L;
}

bool has_functional_equation_symmetry(const LPolynomial& L) {
  const int g = L.genus;
  if (L.degree() != 2 * g || L.c.empty() || L.c[0] != 1) return false;
  for (int k = 0; k <= 2 * g; ++k) {
    // c_{2g-k} = q^{g-k} c_k, written without negative powers
    const std::int64_t lhs = L.c[static_cast<std::size_t>(2 * g - k)];
    const std::int64_t rhs = L.c[static_cast<std::size_t>(k)];
    if (k <= g) {
      if (lhs != ipow(L.q, g - k) * rhs) return false;
    } else if (ipow(L.q, k - g) * lhs != rhs) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Unitarized cosine polynomial

double CosinePoly::scale() const noexcept {
  double s = 0.0;
  for (double v : a_) s += std::abs(v);
  return s;
}

double CosinePoly::derivative(double theta, int order) const noexcept {
  double acc = 0.0;
  for (std::size_t m = 0; m < a_.size(); ++m) {
    if (m == 0) {
      if (order == 0) acc += a_[0];
      continue;
    }
    const double w = kTwoPi * static_cast<double>(m);
    const double x = w * theta;
    double base = 0.0;
    switch (order & 3) {
      case 0: base = std::cos(x); break;
      case 1: base = -std::sin(x); break;
      case 2: base = -std::cos(x); break;
      default: base = std::sin(x); break;
    }
    acc += a_[m] * std::pow(w, order) * base;
  }
  return acc;
}

CosinePoly unitarize(const LPolynomial& L) {
  const int g = L.genus;
  const double sq = std::sqrt(static_cast<double>(L.q));
  std::vector<double> a(static_cast<std::size_t>(g) + 1, 0.0);
  a[0] = static_cast<double>(L.c[static_cast<std::size_t>(g)]) * std::pow(sq, -g);
  for (int k = 0; k < g; ++k) {
    a[static_cast<std::size_t>(g - k)] = 2.0 * static_cast<double>(L.c[static_cast<std::size_t>(k)]) * std::pow(sq, -k);
  }
  return CosinePoly(std::move(a));
}

// ---------------------------------------------------------------------------
// Zero angles

namespace {

struct Root {
  double theta;
  int multiplicity;
};

// Root of fn in [lo, hi] where fn(lo), fn(hi) have opposite signs; bisection
// down to machine resolution, then a few Newton steps kept inside the bracket.
template <class F, class DF>
double bracketed_root(F fn, DF dfn, double lo, double hi) {
  double flo = fn(lo);
  for (int it = 0; it < 200 && hi - lo > 4e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = dfn(x);
    if (d == 0.0) break;
    const double nx = x - fn(x) / d;
    if (nx < lo - 1e-15 || nx > hi + 1e-15) break;
    if (std::abs(fn(nx)) > std::abs(fn(x))) break;
    x = nx;
  }
  return x;
}

int vanishing_order(const CosinePoly& xi, double theta, int start) {
  const int g = xi.degree();
  const double scale = xi.scale();
  const double w = kTwoPi * g;
  for (int j = start; j <= 2 * g + 2; ++j) {
    if (std::abs(xi.derivative(theta, j)) > 1e-6 * scale * std::pow(w, j)) return j;
  }
  return start;
}

struct Attempt {
  std::vector<Root> interior;
  std::vector<Root> endpoints;
  int count = 0;
  std::vector<std::pair<double, double>> suspects;
};

Attempt isolate(const CosinePoly& xi, int cells) {
  constexpr double kTangentTol = 1e-9;
  const double scale = xi.scale();
  const double h = 0.5 / cells;
  auto f = [&](double t) { return xi(t); };
  auto df = [&](double t) { return xi.derivative(t, 1); };
  auto d2f = [&](double t) { return xi.derivative(t, 2); };

  std::vector<double> v(static_cast<std::size_t>(cells) + 1);
  std::vector<double> dv(v.size());
  for (int i = 0; i <= cells; ++i) {
    const double t = (i == cells) ? 0.5 : i * h;
    v[static_cast<std::size_t>(i)] = f(t);
    dv[static_cast<std::size_t>(i)] = df(t);
  }
  dv[0] = 0.0;
  dv[static_cast<std::size_t>(cells)] = 0.0;

  Attempt out;
  for (double e : {0.0, 0.5}) {
    const auto idx = static_cast<std::size_t>(e == 0.0 ? 0 : cells);
    if (std::abs(v[idx]) <= kTangentTol * scale) {
      out.endpoints.push_back({e, vanishing_order(xi, e, 2)});
      v[idx] = 0.0;
    }
  }
  // Zeros sitting on an interior grid point (e.g. theta = 1/4) are taken
  // directly; both neighbouring cells then skip them.
  for (int i = 1; i < cells; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (std::abs(v[iu]) > kTangentTol * scale) continue;
    double t = i * h;
    const int order = vanishing_order(xi, t, 1);
    if (order == 1) {
      for (int it = 0; it < 3; ++it) t -= f(t) / df(t);
    }
    out.interior.push_back({t, order});
    v[iu] = 0.0;
  }

  for (int i = 0; i < cells; ++i) {
    const double a = i * h;
    const double b = (i + 1 == cells) ? 0.5 : (i + 1) * h;
    const double va = v[static_cast<std::size_t>(i)];
    const double vb = v[static_cast<std::size_t>(i + 1)];
    const double da = dv[static_cast<std::size_t>(i)];
    const double db = dv[static_cast<std::size_t>(i + 1)];

    // Breakpoints split the cell into pieces on which Xi is monotone.
    std::vector<std::pair<double, double>> pts{{a, va}};
    if (da != 0.0 && db != 0.0 && (da < 0) != (db < 0)) {
      const double c = bracketed_root(df, d2f, a, b);
      if (c > 1e-12 && c < 0.5 - 1e-12) {
        double vc = f(c);
        if (std::abs(vc) <= kTangentTol * scale) {
          bool duplicate = false;
          for (const auto& r : out.interior) duplicate = duplicate || std::abs(r.theta - c) < 1e-10;
          if (!duplicate) out.interior.push_back({c, vanishing_order(xi, c, 2)});
          vc = 0.0;
        } else if (std::abs(vc) < 1e-6 * scale) {
          out.suspects.emplace_back(a, b);
        }
        pts.emplace_back(c, vc);
      }
    }
    pts.emplace_back(b, vb);
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
      const auto [l, fl] = pts[p];
      const auto [r, fr] = pts[p + 1];
      if (fl == 0.0 || fr == 0.0 || (fl < 0) == (fr < 0)) continue;
      const double t = bracketed_root(f, df, l, r);
      out.interior.push_back({t, vanishing_order(xi, t, 1)});
    }
  }

  for (const auto& r : out.interior) out.count += 2 * r.multiplicity;
  for (const auto& r : out.endpoints) out.count += r.multiplicity;
  return out;
}

}  // namespace

ZeroAngles find_zero_angles(const LPolynomial& L, int grid_factor) {
  if (grid_factor < 16) throw ConfigError("grid_factor must be at least 16");
  const CosinePoly xi = unitarize(L);
  const int g = L.genus;
  ZeroAngles out;
  out.q = L.q;
  out.genus = g;
  if (g == 0) return out;

  std::vector<std::pair<double, double>> suspects;
  for (int gf = std::min(grid_factor, 1024);; gf = std::min(2 * gf, 1024)) {
    Attempt at = isolate(xi, gf * (2 * g + 2));
    if (at.count != 2 * g) {
      suspects = std::move(at.suspects);
      if (gf == 1024) break;
      continue;
    }
    const double scale = xi.scale();
    for (const auto& r : at.endpoints) {
      for (int m = 0; m < r.multiplicity; ++m) out.theta.push_back(r.theta);
    }
    for (const auto& r : at.interior) {
      for (int m = 0; m < r.multiplicity; ++m) {
        out.theta.push_back(r.theta);
        out.theta.push_back(1.0 - r.theta);
      }
    }
    std::sort(out.theta.begin(), out.theta.end());
    double res = 0.0;
    for (double t : out.theta) res = std::max(res, std::abs(xi(t)) / scale);
    out.residual = res;
    out.grid_factor = gf;
    return out;
  }
  throw RootIsolationError("could not isolate all " + std::to_string(2 * g) + " zeros for D = " + L.D,
                           std::move(suspects));
}

std::complex<double> power_sum(const ZeroAngles& zeros, int k) {
  double re = 0.0;
  double im = 0.0;
  for (double t : zeros.theta) {
    const double x = kTwoPi * k * t;
    re += std::cos(x);
    im += std::sin(x);
  }
  if (std::abs(im) > 1e-9) {
    throw ConsistencyError("power sum for k = " + std::to_string(k) + " has imaginary part " + std::to_string(im));
  }
  return {re, im};
}

std::vector<std::complex<double>> reconstruct_coefficients(const ZeroAngles& zeros) {
  const double sq = std::sqrt(static_cast<double>(zeros.q));
  std::vector<std::complex<double>> p{1.0};
  for (double t : zeros.theta) {
    const std::complex<double> r = -sq * std::polar(1.0, -kTwoPi * t);
    p.push_back(0.0);
    for (std::size_t i = p.size() - 1; i >= 1; --i) p[i] += r * p[i - 1];
  }
  return p;
}

double reconstruction_error(const ZeroAngles& zeros, const LPolynomial& L) {
  const auto p = reconstruct_coefficients(zeros);
  if (p.size() != L.c.size()) return std::numeric_limits<double>::infinity();
  double err = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    err = std::max(err, std::abs(p[k] - static_cast<double>(L.c[k])));
    norm = std::max(norm, std::abs(static_cast<double>(L.c[k])));
  }
  return err / norm;
}

std::vector<std::complex<long double>> aberth_roots(const std::vector<long double>& coeffs) {
  using C = std::complex<long double>;
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0L) --n;
  if (n <= 1) return {};
  const int deg = static_cast<int>(n) - 1;
  auto eval = [&](C z, C& dp) {
    C p = coeffs[n - 1];
    dp = 0;
    for (int i = deg - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + coeffs[static_cast<std::size_t>(i)];
    }
    return p;
  };
  const long double radius = std::pow(std::abs(coeffs[0] / coeffs[n - 1]), 1.0L / deg);
  std::vector<C> z(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) {
    z[static_cast<std::size_t>(i)] = std::polar(radius, 2.0L * std::numbers::pi_v<long double> * (i + 0.25L) / deg);
  }
  for (int it = 0; it < 2000; ++it) {
    long double max_step = 0.0L;
    for (int i = 0; i < deg; ++i) {
      C dp;
      const C p = eval(z[static_cast<std::size_t>(i)], dp);
      if (p == C(0)) continue;
      const C ratio = p / dp;
      C sum = 0;
      for (int j = 0; j < deg; ++j) {
        if (j != i) sum += 1.0L / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      }
      const C step = ratio / (1.0L - ratio * sum);
      z[static_cast<std::size_t>(i)] -= step;
      max_step = std::max(max_step, std::abs(step) / radius);
    }
    if (max_step < 1e-17L) break;
  }
  return z;
}

double rh_radius_error(const LPolynomial& L) {
  std::vector<long double> coeffs(L.c.begin(), L.c.end());
  const auto roots = aberth_roots(coeffs);
  const long double sq = std::sqrt(static_cast<long double>(L.q));
  std::vector<bool> used(roots.size(), false);
  long double worst = 0.0L;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::complex<long double> sum = 0;
    int members = 0;
    for (std::size_t j = i; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) * sq < 1e-5L) {
        used[j] = true;
        sum += roots[j];
        ++members;
      }
    }
    worst = std::max(worst, std::abs(std::abs(sum / static_cast<long double>(members)) * sq - 1.0L));
  }
  return static_cast<double>(worst);
}

nlohmann::json to_json(const LPolynomial& L) {
  return {{"q", L.q}, {"d", 2 * L.genus + 1}, {"D", L.D}, {"c", L.c}};
}

nlohmann::json to_json(const ZeroAngles& zeros) {
  return {{"theta", zeros.theta}, {"residual", zeros.residual}};
}

}  // namespace hyperell
