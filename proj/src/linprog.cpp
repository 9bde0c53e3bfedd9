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

#include "stratcomm/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stratcomm {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr double kPhaseOneEps = 1e-9;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its last entry is -objective.
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Load `costs` (length cols_) and price out the current basis.
  void set_costs(const std::vector<double>& costs) {
    for (std::size_t c = 0; c < cols_; ++c) cost(c) = costs[c];
    rhs(rows_) = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double f = cost(basis_[r]);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) -= f * at(r, c);
    }
  }

  // Returns kOptimal, kUnbounded or kIterationLimit. Columns >= `allowed`
  // never enter.
  LpStatus run(std::size_t allowed, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (cost(c) < -kCostEps) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return LpStatus::kOptimal;
      std::size_t leave = rows_;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double v = at(r, enter);
        if (v <= kPivotEps) continue;
        const double ratio = rhs(r) / v;
        if (leave == rows_ || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return LpStatus::kUnbounded;
      pivot(leave, enter);
    }
    return LpStatus::kIterationLimit;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) {
    throw std::invalid_argument("solve_lp: objective length != num_vars");
  }
  for (const auto& c : lp.constraints) {
    if (c.coeffs.size() != n) {
      throw std::invalid_argument("solve_lp: constraint length != num_vars");
    }
  }

  // Column layout: [original (x+) | x- for free vars | slack/surplus | artificial]
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.free_vars.empty() && lp.free_vars[j]) free_cols.push_back(j);
  }
  const std::size_t m = lp.constraints.size();
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& c : lp.constraints) {
    const bool flip = c.rhs < 0.0;
    Relation rel = c.relation;
    if (flip && rel != Relation::kEqual) {
      rel = rel == Relation::kLessEqual ? Relation::kGreaterEqual
                                        : Relation::kLessEqual;
    }
    if (rel != Relation::kEqual) ++n_slack;
    if (rel != Relation::kLessEqual) ++n_art;
  }
  const std::size_t base = n + free_cols.size();
  const std::size_t cols = base + n_slack + n_art;
  Tableau t(m, cols);

  std::size_t next_slack = base, next_art = base + n_slack;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraints[r];
    double scale = 0.0;
    for (double v : c.coeffs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    const double sign = c.rhs < 0.0 ? -1.0 : 1.0;
    const double f = sign / scale;
    Relation rel = c.relation;
    if (sign < 0.0 && rel != Relation::kEqual) {
      rel = rel == Relation::kLessEqual ? Relation::kGreaterEqual
                                        : Relation::kLessEqual;
    }
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = c.coeffs[j] * f;
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      t.at(r, n + k) = -c.coeffs[free_cols[k]] * f;
    }
    t.rhs(r) = c.rhs * f;
    if (rel == Relation::kLessEqual) {
      t.at(r, next_slack) = 1.0;
      t.basis()[r] = next_slack++;
    } else {
      if (rel == Relation::kGreaterEqual) t.at(r, next_slack++) = -1.0;
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    }
  }

  const int max_iter = 50'000;
  LpResult result;

  if (n_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = base + n_slack; c < cols; ++c) phase1[c] = 1.0;
    t.set_costs(phase1);
    auto st = t.run(cols, max_iter);
    if (st == LpStatus::kIterationLimit) {
      result.status = st;
      return result;
    }
    if (-t.rhs(m) > kPhaseOneEps) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < base + n_slack) continue;
      for (std::size_t c = 0; c < base + n_slack; ++c) {
        if (std::abs(t.at(r, c)) > kPivotEps) {
          t.pivot(r, c);
          break;
        }
      }
    }
  }

  double oscale = 0.0;
  for (double v : lp.objective) oscale = std::max(oscale, std::abs(v));
  if (oscale == 0.0) oscale = 1.0;
  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j] / oscale;
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    phase2[n + k] = -lp.objective[free_cols[k]] / oscale;
  }
  t.set_costs(phase2);
  // Artificial columns may not re-enter.
  auto st = t.run(base + n_slack, max_iter);
  if (st != LpStatus::kOptimal) {
    result.status = st;
    return result;
  }

  std::vector<double> full(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) full[t.basis()[r]] = t.rhs(r);
  result.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) result.x[j] = std::max(0.0, full[j]);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    result.x[free_cols[k]] = full[free_cols[k]] - full[n + k];
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace stratcomm
