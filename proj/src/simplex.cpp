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

#include "hyperell/simplex.hpp"

#include <cmath>
#include <string>

namespace hyperell::lp {

namespace {

constexpr double kZeroTol = 1e-12;

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Options& opt)
      : A_(A), b_(b), m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())), opt_(opt) {
    for (int i = 0; i < m_; ++i) {
      if (b_(i) < 0) {
        A_.row(i) *= -1.0;
        b_(i) = -b_(i);
      }
    }
    basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;
  }

  Eigen::VectorXd column(int j) const {
    if (j < n_) return A_.col(j);
    return Eigen::VectorXd::Unit(m_, j - n_);
  }

  // Returns the objective value; updates the basis in place.
  double run(const Eigen::VectorXd& cost, bool artificials_may_enter) {
    int degenerate_run = 0;
    const int total = artificials_may_enter ? n_ + m_ : n_;
    for (;;) {
      if (++iterations_ > opt_.max_iterations) throw SolverError("simplex iteration cap reached");
      factorize();
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
      Eigen::VectorXd xb = lu_.solve(b_);
      // Snap roundoff so that degenerate ties are exact and Bland's rule applies.
      for (int i = 0; i < m_; ++i) {
        if (std::abs(xb(i)) < kZeroTol) xb(i) = 0.0;
      }
      const Eigen::VectorXd pi = lu_.transpose().solve(cb);

      std::vector<bool> in_basis(static_cast<std::size_t>(n_ + m_), false);
      for (int j : basis_) in_basis[static_cast<std::size_t>(j)] = true;
      const bool bland = degenerate_run >= opt_.degenerate_before_bland;
      int entering = -1;
      double best = opt_.optimality_tol;
      for (int j = 0; j < total; ++j) {
        if (in_basis[static_cast<std::size_t>(j)]) continue;
        const double d = cost(j) - (j < n_ ? pi.dot(A_.col(j)) : pi(j - n_));
        if (d > best) {
          entering = j;
          best = d;
          if (bland) break;
        }
      }
      if (entering < 0) return cb.dot(xb);

      const Eigen::VectorXd u = lu_.solve(column(entering));
      int leave = -1;
      double ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (u(i) <= opt_.pivot_tol) continue;
        const double t = std::max(xb(i), 0.0) / u(i);
        if (leave < 0 || t < ratio ||
            (t == ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          ratio = t;
        }
      }
      if (leave < 0) throw SolverError("linear program is unbounded");
      degenerate_run = ratio == 0.0 ? degenerate_run + 1 : 0;
      basis_[static_cast<std::size_t>(leave)] = entering;
    }
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < n_) continue;
      factorize();
      const Eigen::VectorXd row = lu_.transpose().solve(Eigen::VectorXd::Unit(m_, r));
      std::vector<bool> in_basis(static_cast<std::size_t>(n_), false);
      for (int j : basis_) {
        if (j < n_) in_basis[static_cast<std::size_t>(j)] = true;
      }
      int pick = -1;
      double best = opt_.pivot_tol;
      for (int j = 0; j < n_; ++j) {
        if (in_basis[static_cast<std::size_t>(j)]) continue;
        const double v = std::abs(row.dot(A_.col(j)));
        if (v > best) {
          best = v;
          pick = j;
        }
      }
      if (pick < 0) throw SolverError("constraint matrix is rank deficient");
      basis_[static_cast<std::size_t>(r)] = pick;
    }
  }

  Eigen::VectorXd basic_values() {
    factorize();
    return lu_.solve(b_);
  }

  Eigen::VectorXd multipliers(const Eigen::VectorXd& cost) {
    factorize();
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
    return lu_.transpose().solve(cb);
  }

  const std::vector<int>& basis() const { return basis_; }
  int iterations() const { return iterations_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const Eigen::VectorXd& b() const { return b_; }

  bool try_start(const std::vector<int>& start) {
    if (static_cast<int>(start.size()) != m_) return false;
    for (int j : start) {
      if (j < 0 || j >= n_) return false;
    }
    const auto saved = basis_;
    basis_ = start;
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    lu_.compute(B);
    if (lu_.rcond() > 1e-12) {
      const Eigen::VectorXd xb = lu_.solve(b_);
      if (xb.minCoeff() >= -kZeroTol) return true;
    }
    basis_ = saved;
    return false;
  }

 private:
  void factorize() {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    lu_.compute(B);
    if (!(lu_.rcond() > 1e-15)) throw SolverError("simplex basis became singular");
  }

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  int m_;
  int n_;
  Options opt_;
  std::vector<int> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  int iterations_ = 0;
};

}  // namespace

Solution maximize(const StandardForm& program, const Options& options, const std::vector<int>& start_basis) {
  const auto m = program.A.rows();
  const auto n = program.A.cols();
  if (program.b.size() != m || program.c.size() != n) throw SolverError("linear program dimensions disagree");
  if (m == 0) throw SolverError("linear program has no constraints");

  Tableau t(program.A, program.b, options);

  if (!t.try_start(start_basis)) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
    phase1.tail(m).setConstant(-1.0);
    const double infeasibility = -t.run(phase1, true);
    if (infeasibility > options.feasibility_tol * (1.0 + t.b().lpNorm<1>())) {
      throw SolverError("linear program is infeasible (phase one residual " + std::to_string(infeasibility) + ")");
    }
    t.drive_out_artificials();
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = program.c;
  Solution sol;
  sol.objective = t.run(phase2, false);

  const Eigen::VectorXd xb = t.basic_values();
  sol.y = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < t.m(); ++i) sol.y(t.basis()[static_cast<std::size_t>(i)]) = std::max(xb(i), 0.0);
  sol.duals = t.multipliers(phase2);
  // Rows flipped to make b >= 0 flip their multipliers as well.
  for (int i = 0; i < m; ++i) {
    if (program.b(i) < 0) sol.duals(i) = -sol.duals(i);
  }
  sol.basis = t.basis();
  sol.iterations = t.iterations();
  return sol;
}

}  // namespace hyperell::lp
