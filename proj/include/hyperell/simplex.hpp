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

// Dense two-phase revised simplex for small standard-form programs
//
//     maximize c^T y  subject to  A y = b,  y >= 0,
//
// with few rows (tens) and up to a few thousand columns. The basis is
// refactorized from scratch every iteration; pricing is Dantzig's rule with a
// switch to Bland's rule after a run of degenerate pivots.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hyperell/errors.hpp"

namespace hyperell::lp {

struct StandardForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct Solution {
  Eigen::VectorXd y;
  /// Multipliers pi with B^T pi = c_B; an optimal point of the dual
  /// minimize b^T x subject to A^T x >= c.
  Eigen::VectorXd duals;
  double objective = 0.0;
  std::vector<int> basis;
  int iterations = 0;
};

struct Options {
  double optimality_tol = 1e-12;
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  int max_iterations = 50000;
  int degenerate_before_bland = 50;
};

/// Throws SolverError when the program is infeasible, unbounded, rank
/// deficient, or the iteration cap is reached. A primal feasible starting
/// basis (column indices, one per row) skips phase one; an infeasible or
/// singular one is ignored.
Solution maximize(const StandardForm& program, const Options& options = {},
                  const std::vector<int>& start_basis = {});

}  // namespace hyperell::lp
