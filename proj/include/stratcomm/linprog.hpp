// Copyright 2026 The stratcomm Authors.
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

#ifndef STRATCOMM_LINPROG_HPP_
#define STRATCOMM_LINPROG_HPP_

// Dense two-phase simplex for the small LPs that appear in equilibrium
// computation (tens of variables and constraints). Bland's rule throughout,
// so it terminates on degenerate problems.

#include <cstddef>
#include <vector>

namespace stratcomm {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// minimize objective . x  subject to constraints, x >= 0 unless marked free.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<bool> free_vars;  // empty means none

  explicit LinearProgram(std::size_t n = 0)
      : num_vars(n), objective(n, 0.0) {}

  void add(std::vector<double> coeffs, Relation rel, double rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
  void set_free(std::size_t var) {
    if (free_vars.empty()) free_vars.assign(num_vars, false);
    free_vars[var] = true;
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

LpResult solve_lp(const LinearProgram& lp);

const char* to_string(LpStatus status);

}  // namespace stratcomm

#endif  // STRATCOMM_LINPROG_HPP_
