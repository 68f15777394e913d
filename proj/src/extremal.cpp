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

#include "hyperell/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "hyperell/simplex.hpp"

namespace hyperell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kClusterDepth = 40;
constexpr int kMaxCuttingRounds = 40;
constexpr double kRepairCap = 1e-4;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double wrap(double x) { return x - std::floor(x); }

// Maximizes a unimodal-ish function on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 100 && b - a > 1e-16; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Majorant of sigma * f, posed on the residual sigma * (f - f_N) where f_N is
// the degree-N Fourier truncation of f. Even targets use cosines only and
// live on [0, 1/2]; odd targets use the full basis on [0, 1).
class ResidualProblem {
 public:
  ResidualProblem(const Target& target, int sigma, int N) : target_(target), sigma_(sigma), N_(N) {
    even_ = target.is_even();
    fn_cos_.assign(static_cast<std::size_t>(N) + 1, 0.0);
    fn_sin_.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 1; k <= N; ++k) {
      if (target.kind == Target::Kind::log2sin) {
        fn_cos_[static_cast<std::size_t>(k)] = -1.0 / k;
        continue;
      }
      const int m = target.m;
      const double mag = 2.0 * factorial(m) / std::pow(kTwoPi * k, m);
      if (m % 2 == 1) {
        fn_sin_[static_cast<std::size_t>(k)] = -mag * (((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0);
      } else {
        fn_cos_[static_cast<std::size_t>(k)] = -mag * ((m / 2) % 2 == 0 ? 1.0 : -1.0);
      }
    }
  }

  bool even() const noexcept { return even_; }
  int degree() const noexcept { return N_; }
  int rows() const noexcept { return even_ ? N_ + 1 : 2 * N_ + 1; }
  double domain_end() const noexcept { return even_ ? 0.5 : 1.0; }

  double truncation(double theta) const {
    double acc = 0.0;
    for (int k = 1; k <= N_; ++k) {
      const double x = kTwoPi * k * theta;
      acc += fn_cos_[static_cast<std::size_t>(k)] * std::cos(x) + fn_sin_[static_cast<std::size_t>(k)] * std::sin(x);
    }
    return acc;
  }

  // sigma * (f - f_N), using the upper envelope at the sawtooth jump.
  double residual(double theta) const {
    double f;
    if (target_.kind == Target::Kind::bernoulli && target_.m == 1 && (wrap(theta) < 1e-300 || wrap(theta) == 1.0)) {
      f = 0.5 * sigma_;
      return f - sigma_ * truncation(theta);
    }
    f = target_(theta);
    return sigma_ * (f - truncation(theta));
  }

  void basis(double theta, double* out) const {
    out[0] = 1.0;
    for (int k = 1; k <= N_; ++k) {
      const double x = kTwoPi * k * theta;
      out[k] = std::cos(x);
      if (!even_) out[N_ + k] = std::sin(x);
    }
  }

  // Residual majorant sum coef_r phi_r(theta).
  double eval(const std::vector<double>& coef, double theta) const {
    std::vector<double> phi(static_cast<std::size_t>(rows()));
    basis(theta, phi.data());
    double acc = 0.0;
    for (int r = 0; r < rows(); ++r) acc += coef[static_cast<std::size_t>(r)] * phi[static_cast<std::size_t>(r)];
    return acc;
  }

  // Polynomial majorizing sigma * f.
  TrigPoly assemble(const std::vector<double>& coef) const {
    std::vector<double> a(static_cast<std::size_t>(N_) + 1, 0.0);
    std::vector<double> b(static_cast<std::size_t>(N_), 0.0);
    a[0] = coef[0];
    for (int k = 1; k <= N_; ++k) {
      a[static_cast<std::size_t>(k)] = coef[static_cast<std::size_t>(k)] + sigma_ * fn_cos_[static_cast<std::size_t>(k)];
      const double bs = even_ ? 0.0 : coef[static_cast<std::size_t>(N_ + k)];
      b[static_cast<std::size_t>(k - 1)] = bs + sigma_ * fn_sin_[static_cast<std::size_t>(k)];
    }
    return TrigPoly::from_cos_sin(a, b);
  }

 private:
  Target target_;
  int sigma_;
  int N_;
  bool even_ = false;
  std::vector<double> fn_cos_;
  std::vector<double> fn_sin_;
};

// (j + 1/2)/(2N+1): the uniform measure on these points annihilates every
// nonconstant frequency up to N, so they carry a nondegenerate feasible basis.
std::vector<double> crash_points(const ResidualProblem& prob) {
  const int K = 2 * prob.degree() + 1;
  const int count = prob.even() ? prob.degree() + 1 : K;
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back((j + 0.5) / K);
  return out;
}

std::vector<double> initial_points(const ResidualProblem& prob, const Target& target, int grid_points) {
  std::set<double> pts;
  const double end = prob.domain_end();
  const bool skip_zero = target.kind == Target::Kind::log2sin;
  if (prob.even()) {
    for (int i = 0; i < grid_points; ++i) pts.insert(end * i / (grid_points - 1));
  } else {
    for (int i = 0; i < grid_points; ++i) pts.insert(static_cast<double>(i) / grid_points);
  }
  for (int j = 1; j <= kClusterDepth; ++j) {
    const double h = std::ldexp(1.0, -j);
    pts.insert(h);
    if (!prob.even()) pts.insert(1.0 - h);
  }
  if (skip_zero) pts.erase(0.0);
  for (double t : crash_points(prob)) pts.insert(t);
  return {pts.begin(), pts.end()};
}

struct LpOutcome {
  std::vector<double> coef;
  double mean = 0.0;
};

LpOutcome solve_on(const ResidualProblem& prob, const std::vector<double>& pts) {
  const int rows = prob.rows();
  const int cols = static_cast<int>(pts.size());
  std::vector<double> r(pts.size());
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r[i] = prob.residual(pts[i]);
    s = std::max(s, std::abs(r[i]));
  }
  if (s == 0.0) s = 1.0;

  lp::StandardForm form;
  form.A.resize(rows, cols);
  form.b = Eigen::VectorXd::Zero(rows);
  form.b(0) = 1.0;
  form.c.resize(cols);
  std::vector<double> phi(static_cast<std::size_t>(rows));
  for (int i = 0; i < cols; ++i) {
    prob.basis(pts[static_cast<std::size_t>(i)], phi.data());
    for (int j = 0; j < rows; ++j) form.A(j, i) = phi[static_cast<std::size_t>(j)];
    form.c(i) = r[static_cast<std::size_t>(i)] / s;
  }
  std::vector<int> start;
  for (double t : crash_points(prob)) {
    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    if (it != pts.end() && *it == t) start.push_back(static_cast<int>(it - pts.begin()));
  }
  const auto sol = lp::maximize(form, {}, start);
  LpOutcome out;
  out.coef.resize(static_cast<std::size_t>(rows));
  for (int j = 0; j < rows; ++j) out.coef[static_cast<std::size_t>(j)] = sol.duals(j) * s;
  out.mean = out.coef[0];
  return out;
}

// Local maxima of g on a uniform grid over [0, end] (cyclic when end = 1),
// each refined by golden section; returns (theta, value) pairs.
template <class G>
std::vector<std::pair<double, double>> local_maxima(G&& g, double end, int n, bool skip_zero) {
  const bool cyclic = end == 1.0;
  const int count = cyclic ? n : n + 1;
  std::vector<double> x(static_cast<std::size_t>(count));
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    x[static_cast<std::size_t>(i)] = end * i / n;
    v[static_cast<std::size_t>(i)] = (skip_zero && i == 0) ? -std::numeric_limits<double>::infinity() : g(x[static_cast<std::size_t>(i)]);
  }
  std::vector<std::pair<double, double>> found;
  const double h = end / n;
  for (int i = 0; i < count; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double left = i > 0 ? v[iu - 1] : (cyclic ? v.back() : -std::numeric_limits<double>::infinity());
    const double right = i + 1 < count ? v[iu + 1] : (cyclic ? v.front() : -std::numeric_limits<double>::infinity());
    if (!(v[iu] >= left && v[iu] >= right) || !std::isfinite(v[iu])) continue;
    double a = x[iu] - h;
    double b = x[iu] + h;
    if (!cyclic) {
      a = std::max(a, skip_zero ? 1e-300 : 0.0);
      b = std::min(b, end);
    }
    auto [t, val] = golden_max(g, a, b);
    if (val < v[iu]) {
      t = x[iu];
      val = v[iu];
    }
    found.emplace_back(cyclic ? wrap(t) : t, val);
  }
  return found;
}

}  // namespace

// ---------------------------------------------------------------------------
// TrigPoly

TrigPoly::TrigPoly(std::vector<std::complex<double>> c) : c_(std::move(c)) {
  if (c_.empty()) c_.assign(1, 0.0);
  c_[0] = c_[0].real();
}

TrigPoly TrigPoly::from_cos_sin(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.size() + 1 != a.size()) throw ConfigError("cos/sin coefficient lengths disagree");
  std::vector<std::complex<double>> c(a.size());
  c[0] = a[0];
  for (std::size_t k = 1; k < a.size(); ++k) c[k] = {a[k] / 2.0, -b[k - 1] / 2.0};
  return TrigPoly(std::move(c));
}

std::complex<double> TrigPoly::coefficient(int k) const {
  if (std::abs(k) > degree()) return 0.0;
  const auto& v = c_[static_cast<std::size_t>(std::abs(k))];
  return k >= 0 ? v : std::conj(v);
}

double TrigPoly::operator()(double theta) const noexcept {
  double acc = c_[0].real();
  for (std::size_t k = 1; k < c_.size(); ++k) {
    const double x = kTwoPi * static_cast<double>(k) * theta;
    acc += 2.0 * (c_[k].real() * std::cos(x) - c_[k].imag() * std::sin(x));
  }
  return acc;
}

std::vector<double> TrigPoly::cos_coefficients() const {
  std::vector<double> a(c_.size());
  a[0] = c_[0].real();
  for (std::size_t k = 1; k < c_.size(); ++k) a[k] = 2.0 * c_[k].real();
  return a;
}

std::vector<double> TrigPoly::sin_coefficients() const {
  std::vector<double> b;
  for (std::size_t k = 1; k < c_.size(); ++k) b.push_back(-2.0 * c_[k].imag());
  return b;
}

TrigPoly TrigPoly::shifted(double beta) const {
  auto c = c_;
  for (std::size_t k = 1; k < c.size(); ++k) c[k] *= std::polar(1.0, -kTwoPi * static_cast<double>(k) * beta);
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::reflected() const {
  auto c = c_;
  for (auto& v : c) v = std::conj(v);
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::scaled(double s) const {
  auto c = c_;
  for (auto& v : c) v *= s;
  return TrigPoly(std::move(c));
}

TrigPoly TrigPoly::plus_constant(double v) const {
  auto c = c_;
  c[0] += v;
  return TrigPoly(std::move(c));
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  std::vector<std::complex<double>> c(static_cast<std::size_t>(std::max(a.degree(), b.degree())) + 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coefficient(static_cast<int>(k)) + b.coefficient(static_cast<int>(k));
  }
  return TrigPoly(std::move(c));
}

nlohmann::json to_json(const TrigPoly& p) {
  return {{"N", p.degree()}, {"cos", p.cos_coefficients()}, {"sin", p.sin_coefficients()}};
}

// ---------------------------------------------------------------------------
// Targets

std::string to_string(Side side) { return side == Side::majorant ? "majorant" : "minorant"; }

Side parse_side(const std::string& text) {
  if (text == "majorant" || text == "upper" || text == "+") return Side::majorant;
  if (text == "minorant" || text == "lower" || text == "-") return Side::minorant;
  throw ParseError("unknown side '" + text + "' (expected majorant or minorant)");
}

std::string Target::tag() const {
  if (kind == Kind::log2sin) return "log2sin";
  if (m == 1) return "sawtooth";
  return "bernoulli:" + std::to_string(m - 1);
}

double Target::operator()(double theta) const {
  if (kind == Kind::log2sin) {
    const double s = std::abs(std::sin(kPi * theta));
    return s == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(2.0 * s);
  }
  return periodic_bernoulli(m, theta);
}

double oracle_mean(const Target& target, Side side, int N) {
  if (N < 0) throw ConfigError("degree N must be nonnegative");
  if (target.kind == Target::Kind::log2sin) {
    if (side == Side::minorant) throw ConfigError("log2sin is unbounded below and has no minorant");
    return std::log(2.0) / (N + 1);
  }
  if (target.m < 1 || target.m > BernoulliTable::kMaxIndex) {
    throw ConfigError("Bernoulli index " + std::to_string(target.m) + " unsupported");
  }
  const auto& e = BernoulliTable::instance().extrema(target.m);
  const double scale = std::pow(N + 1.0, -target.m);
  return (side == Side::majorant ? e.max : e.min) * scale;
}

OneSidedResult construct_one_sided(const Target& target, Side side, int N, int grid_points) {
  const double oracle = oracle_mean(target, side, N);
  const int min_grid = 40 * (N + 1);
  if (grid_points == 0) grid_points = min_grid;
  if (grid_points < min_grid) {
    throw ConfigError("grid_points must be at least 40 (N+1) = " + std::to_string(min_grid));
  }

  // Odd targets: build the majorant and reflect; even targets: flip the sign.
  const bool reflect = !target.is_even() && side == Side::minorant;
  const int sigma = (target.is_even() && side == Side::minorant) ? -1 : 1;
  const ResidualProblem prob(target, sigma, N);

  std::vector<double> pts = initial_points(prob, target, grid_points);
  const bool skip_zero = target.kind == Target::Kind::log2sin;
  LpOutcome lp;
  int rounds = 0;
  for (;; ++rounds) {
    lp = solve_on(prob, pts);
    double s = 0.0;
    for (double t : pts) {
      const double r = prob.residual(t);
      if (std::isfinite(r)) s = std::max(s, std::abs(r));
    }
    const double tol = 1e-11 * s;
    auto violation = [&](double t) { return prob.residual(t) - prob.eval(lp.coef, t); };
    auto peaks = local_maxima(violation, prob.domain_end(), 4 * grid_points, skip_zero);
    std::vector<double> fresh;
    for (const auto& [t, v] : peaks) {
      if (v > tol) fresh.push_back(t);
    }
    if (fresh.empty() || rounds >= kMaxCuttingRounds) break;
    std::set<double> merged(pts.begin(), pts.end());
    std::size_t added = 0;
    for (double t : fresh) {
      auto it = merged.lower_bound(t);
      const bool near_hi = it != merged.end() && *it - t < 1e-14;
      const bool near_lo = it != merged.begin() && t - *std::prev(it) < 1e-14;
      if (near_hi || near_lo) continue;
      merged.insert(t);
      ++added;
    }
    if (added == 0) break;
    pts.assign(merged.begin(), merged.end());
  }

  TrigPoly poly = prob.assemble(lp.coef);
  double lp_mean = lp.mean;
  if (sigma < 0) {
    poly = poly.scaled(-1.0);
    lp_mean = -lp_mean;
  }
  if (reflect) {
    poly = poly.reflected().scaled(-1.0);
    lp_mean = -lp_mean;
  }

  // Certification on a 10x finer uniform grid over the whole circle, the
  // cluster points on both sides of 0, and golden-section refinement of the
  // local minima of the margin.
  const int side_sign = static_cast<int>(side);
  auto margin = [&](const TrigPoly& p, double t) {
    const double f = target(t);
    if (!std::isfinite(f)) return std::numeric_limits<double>::infinity();
    return side_sign * (p(t) - f);
  };
  std::vector<double> cert;
  const int fine = 10 * grid_points;
  for (int i = 0; i < fine; ++i) cert.push_back(static_cast<double>(i) / fine);
  for (int j = 1; j <= kClusterDepth; ++j) {
    cert.push_back(std::ldexp(1.0, -j));
    cert.push_back(1.0 - std::ldexp(1.0, -j));
  }
  for (double t : pts) cert.push_back(t);
  for (double t : pts) cert.push_back(wrap(-t));
  auto neg_margin = [&](double t) { return -margin(poly, t); };
  for (const auto& [t, v] : local_maxima(neg_margin, 1.0, fine, skip_zero)) {
    (void)v;
    cert.push_back(t);
  }

  double worst = std::numeric_limits<double>::infinity();
  double worst_at = 0.0;
  for (double t : cert) {
    const double m = margin(poly, t);
    if (m < worst) {
      worst = m;
      worst_at = t;
    }
  }
  double eps = 0.0;
  if (worst < 0.0) {
    eps = -worst * (1.0 + 1e-12) + 1e-16;
    if (eps > kRepairCap * std::abs(oracle)) {
      throw CertificationError("one-sided certification failed for " + target.tag() + " " + to_string(side) +
                                   " N=" + std::to_string(N),
                               worst_at, worst);
    }
    poly = poly.plus_constant(side_sign * eps);
    worst = std::numeric_limits<double>::infinity();
    for (double t : cert) worst = std::min(worst, margin(poly, t));
  }

  OneSidedResult out;
  out.poly = poly;
  out.side = side;
  out.target = target;
  out.certified_margin = worst;
  out.repair_epsilon = eps;
  out.achieved_mean = poly.mean();
  out.lp_mean = lp_mean;
  out.oracle_mean = oracle;
  out.cutting_rounds = rounds;
  out.lp_points = static_cast<int>(pts.size());
  return out;
}

// ---------------------------------------------------------------------------
// Intervals

double interval_indicator(Interval arc, double theta) {
  return arc.length() + periodic_bernoulli(1, arc.alpha - theta) + periodic_bernoulli(1, theta - arc.beta);
}

double interval_coefficient_bound() { return 1.0 + 1.0 / kPi; }

IntervalPolys interval_polys(Interval arc, int N, int grid_points) {
  const double len = arc.length();
  if (!(len >= 0.0 && len <= 1.0)) throw ConfigError("interval length must lie in [0, 1]");
  auto& cache = ExtremalCache::shared();
  const auto saw = Target::bernoulli(1);
  std::shared_ptr<const OneSidedResult> up;
  std::shared_ptr<const OneSidedResult> lo;
  if (grid_points == 0) {
    up = cache.get(saw, Side::majorant, N);
    lo = cache.get(saw, Side::minorant, N);
  } else {
    up = std::make_shared<OneSidedResult>(construct_one_sided(saw, Side::majorant, N, grid_points));
    lo = std::make_shared<OneSidedResult>(construct_one_sided(saw, Side::minorant, N, grid_points));
  }
  auto compose = [&](const TrigPoly& p) {
    return (p.reflected().shifted(arc.alpha) + p.shifted(arc.beta)).plus_constant(len);
  };
  IntervalPolys out;
  out.majorant = compose(up->poly);
  out.minorant = compose(lo->poly);
  out.majorant_gap = out.majorant.mean() - len;
  out.minorant_gap = len - out.minorant.mean();

  const int fine = 20 * 40 * (N + 1);
  double worst = std::numeric_limits<double>::infinity();
  auto check = [&](double t) {
    const double ind = interval_indicator(arc, t);
    worst = std::min({worst, out.majorant(t) - ind, ind - out.minorant(t)});
  };
  for (int i = 0; i < fine; ++i) check(static_cast<double>(i) / fine);
  for (double e : {arc.alpha, arc.beta}) {
    for (int j = 1; j <= kClusterDepth; ++j) {
      check(e + std::ldexp(1.0, -j));
      check(e - std::ldexp(1.0, -j));
    }
    check(e);
  }
  out.certified_margin = worst;
  if (worst < -1e-12) {
    throw CertificationError("interval polynomial is not one-sided", arc.alpha, worst);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient bounds

CoefficientReport verify_coefficient_bounds(const OneSidedResult& result) {
  CoefficientReport rep;
  rep.target = result.target.tag();
  rep.N = result.poly.degree();
  if (result.target.kind == Target::Kind::log2sin) {
    for (int k = 1; k <= rep.N; ++k) {
      const double u = result.poly.coefficient(k).real();
      const double excursion = std::max(u, -1.0 / (2.0 * k) - u);
      if (excursion > rep.worst_excursion) {
        rep.worst_excursion = excursion;
        rep.worst_k = k;
      }
    }
    if (rep.worst_excursion > 1e-6) {
      throw CertificationError("log2sin majorant coefficient outside [-1/(2k), 0] at k=" + std::to_string(rep.worst_k),
                               rep.worst_k, rep.worst_excursion);
    }
    return rep;
  }
  const int m = result.target.m;
  for (int k = 1; k <= rep.N; ++k) {
    const double v = std::abs(result.poly.coefficient(k)) * std::pow(static_cast<double>(k), m);
    if (v > rep.fitted_constant) {
      rep.fitted_constant = v;
      rep.worst_k = k;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cache

std::shared_ptr<const OneSidedResult> ExtremalCache::get(const Target& target, Side side, int N) {
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard lock(mutex_);
    auto& slot = entries_[Key{target, static_cast<int>(side), N}];
    if (!slot) slot = std::make_shared<Entry>();
    entry = slot;
  }
  std::call_once(entry->once, [&] {
    entry->value = std::make_shared<OneSidedResult>(construct_one_sided(target, side, N, grid_points_));
    std::lock_guard lock(mutex_);
    ++constructions_;
  });
  return entry->value;
}

std::size_t ExtremalCache::constructions() const {
  std::lock_guard lock(mutex_);
  return constructions_;
}

ExtremalCache& ExtremalCache::shared() {
  static ExtremalCache cache;
  return cache;
}

}  // namespace hyperell
