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

#include "stratcomm/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "stratcomm/linprog.hpp"

namespace stratcomm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Strict-preference margin we try to realize when probing next to a tie
// boundary; comfortably above the tie tolerance.
constexpr double kProbeMargin = 1e-7;
constexpr double kPruneEps = 1e-12;

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap,
                          const char* what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / std::max<std::size_t>(base, 1)) {
      throw CapExceededError(std::string(what) + " exceeds the cap of " +
                             std::to_string(cap));
    }
    out *= base;
  }
  if (out > cap) {
    throw CapExceededError(std::string(what) + " exceeds the cap of " +
                           std::to_string(cap));
  }
  return out;
}

// Digits of `index` in base `base`, least significant first.
std::vector<std::size_t> decode(std::size_t index, std::size_t base,
                                std::size_t digits) {
  std::vector<std::size_t> out(digits);
  for (std::size_t k = 0; k < digits; ++k) {
    out[k] = index % base;
    index /= base;
  }
  return out;
}

// Clamp tiny negatives from the LP and renormalize each row.
ConditionalKernel kernel_from_lp(std::span<const double> x, std::size_t rows,
                                 std::size_t cols) {
  std::vector<double> v(x.begin(), x.begin() + rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      v[r * cols + c] = std::max(0.0, v[r * cols + c]);
      s += v[r * cols + c];
    }
    if (s <= 0.0) {
      for (std::size_t c = 0; c < cols; ++c) v[r * cols + c] = 1.0 / cols;
    } else {
      for (std::size_t c = 0; c < cols; ++c) v[r * cols + c] /= s;
    }
  }
  return ConditionalKernel(rows, cols, std::move(v));
}

std::vector<double> normalized(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  double s = 0.0;
  for (auto& e : v) {
    e = std::max(0.0, e);
    s += e;
  }
  for (auto& e : v) e /= s;
  return v;
}

// All points of {k / n : k in N^parts, sum k = n}.
std::vector<std::vector<double>> simplex_grid(std::size_t parts, std::size_t n) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> k(parts, 0);
  auto fill = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == parts) {
      k[pos] = left;
      std::vector<double> p(parts);
      for (std::size_t i = 0; i < parts; ++i) {
        p[i] = static_cast<double>(k[i]) / static_cast<double>(n);
      }
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      k[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  fill(fill, 0, n);
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return static_cast<std::size_t>(std::llround(r));
}

// Largest divisor count n <= n_max whose product grid fits the point cap.
std::size_t grid_divisions(std::size_t parts, std::size_t rows,
                           std::size_t n_max, std::size_t max_points) {
  for (std::size_t n = n_max; n >= 1; --n) {
    const double per_row = static_cast<double>(binomial(n + parts - 1, parts - 1));
    if (std::pow(per_row, static_cast<double>(rows)) <=
        static_cast<double>(max_points)) {
      return n;
    }
  }
  return 1;
}

// Product of per-row simplex grids as |U| x |X| kernels.
template <typename Fn>
void for_each_grid_kernel(std::size_t rows, std::size_t cols, std::size_t n,
                          Fn&& fn) {
  const auto row_points = simplex_grid(cols, n);
  std::vector<std::size_t> odo(rows, 0);
  std::vector<double> v(rows * cols);
  while (true) {
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy(row_points[odo[r]].begin(), row_points[odo[r]].end(),
                v.begin() + r * cols);
    }
    fn(ConditionalKernel(rows, cols, v));
    std::size_t r = 0;
    while (r < rows && ++odo[r] == row_points.size()) odo[r++] = 0;
    if (r == rows) break;
  }
}

template <typename Fn>
void for_each_deterministic(std::size_t rows, std::size_t cols, Fn&& fn) {
  std::vector<std::size_t> choice(rows, 0);
  while (true) {
    fn(choice);
    std::size_t r = 0;
    while (r < rows && ++choice[r] == cols) choice[r++] = 0;
    if (r == rows) break;
  }
}

double grid_error_bound(const BilinearDistortion& form, double resolution) {
  const auto& s = form.sizes;
  double lipschitz = 0.0;
  for (std::size_t u = 0; u < s.u; ++u) {
    for (std::size_t c = 0; c < s.contexts(); ++c) {
      double lo = kInf, hi = -kInf;
      for (std::size_t x = 0; x < s.x; ++x)
        for (std::size_t k = 0; k < s.what; ++k) {
          const double v = form.encoder[form.index(u, x, c, k)];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      lipschitz += hi - lo;
    }
  }
  return lipschitz * resolution;
}

CommittedValue select_response(const BilinearDistortion& form,
                               const ConditionalKernel& g, double tol,
                               bool worst) {
  const auto& s = form.sizes;
  const std::size_t nc = s.contexts();
  const std::size_t nw = s.what;
  const auto cc = context_costs(form, g);
  std::vector<double> h(nc * nw, 0.0);
  CommittedValue out;
  for (std::size_t c = 0; c < nc; ++c) {
    const double p = cc.probability[c];
    std::vector<std::size_t> members;
    if (p > 0.0) {
      double lo = kInf;
      for (std::size_t k = 0; k < nw; ++k) lo = std::min(lo, cc.decoder[c * nw + k] / p);
      for (std::size_t k = 0; k < nw; ++k) {
        if (cc.decoder[c * nw + k] / p <= lo + tol) members.push_back(k);
      }
      if (members.size() > 1) out.tie_contexts.push_back(c);
    } else {
      members.resize(nw);
      std::iota(members.begin(), members.end(), 0);
    }
    std::size_t pick = members.front();
    for (std::size_t k : members) {
      const double v = cc.encoder[c * nw + k];
      const double cur = cc.encoder[c * nw + pick];
      if (worst ? v > cur : v < cur) pick = k;
    }
    h[c * nw + pick] = 1.0;
  }
  out.decoder = ConditionalKernel(nc, nw, std::move(h));
  out.enc_value = evaluate(form, g, out.decoder, Party::kEncoder);
  return out;
}

// Per-pattern linear programs over the region of encoder strategies where a
// deterministic decoder pattern sigma: context -> What is a best response.
class PatternSearch {
 public:
  PatternSearch(const BilinearDistortion& form, const SolverOptions& options)
      : form_(form),
        nc_(form.sizes.contexts()),
        nw_(form.sizes.what),
        nu_(form.sizes.u),
        nx_(form.sizes.x) {
    count_ = checked_power(nw_, nc_, options.max_patterns,
                           "decoder pattern count |What|^(|Y||Xhat|)");
  }

  std::size_t count() const { return count_; }
  std::vector<std::size_t> pattern(std::size_t idx) const {
    return decode(idx, nw_, nc_);
  }

  // Unconstrained minimum of D_E(g, sigma) for every pattern, and the
  // patterns sorted by it.
  std::vector<std::size_t> order(std::vector<double>* lower_bounds) const {
    lower_bounds->assign(count_, 0.0);
    std::vector<double> row_cost(nx_);
    for (std::size_t idx = 0; idx < count_; ++idx) {
      const auto sigma = pattern(idx);
      double lb = 0.0;
      for (std::size_t u = 0; u < nu_; ++u) {
        double best = kInf;
        for (std::size_t x = 0; x < nx_; ++x) {
          double v = 0.0;
          for (std::size_t c = 0; c < nc_; ++c) {
            v += form_.encoder[form_.index(u, x, c, sigma[c])];
          }
          best = std::min(best, v);
        }
        lb += best;
      }
      (*lower_bounds)[idx] = lb;
    }
    std::vector<std::size_t> ord(count_);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      return (*lower_bounds)[a] < (*lower_bounds)[b];
    });
    return ord;
  }

  struct Solution {
    ConditionalKernel g;
    double value = 0.0;
  };

  // min D_E(g, sigma) over the closed region where sigma is a best response.
  std::optional<Solution> closed_optimum(const std::vector<std::size_t>& sigma) const {
    LinearProgram lp(nu_ * nx_);
    for (std::size_t u = 0; u < nu_; ++u)
      for (std::size_t x = 0; x < nx_; ++x) {
        double v = 0.0;
        for (std::size_t c = 0; c < nc_; ++c) {
          v += form_.encoder[form_.index(u, x, c, sigma[c])];
        }
        lp.objective[u * nx_ + x] = v;
      }
    add_simplex_rows(lp, 0);
    add_preference_rows(lp, sigma, /*with_slack=*/false);
    auto res = solve_lp(lp);
    if (!res.optimal()) return std::nullopt;
    auto g = kernel_from_lp(res.x, nu_, nx_);
    return Solution{g, res.objective};
  }

  // A point where sigma is strictly preferred wherever that is possible,
  // with the achieved unnormalized slack.
  std::optional<Solution> interior_point(const std::vector<std::size_t>& sigma) const {
    const std::size_t n = nu_ * nx_;
    LinearProgram lp(n + 1);
    lp.objective[n] = -1.0;
    add_simplex_rows(lp, 1);
    const std::size_t before = lp.constraints.size();
    add_preference_rows(lp, sigma, /*with_slack=*/true);
    if (lp.constraints.size() == before) return std::nullopt;
    std::vector<double> cap(n + 1, 0.0);
    cap[n] = 1.0;
    lp.add(cap, Relation::kLessEqual, 1.0);
    auto res = solve_lp(lp);
    if (!res.optimal() || res.x[n] <= 0.0) return std::nullopt;
    return Solution{kernel_from_lp(res.x, nu_, nx_), res.x[n]};
  }

 private:
  void add_simplex_rows(LinearProgram& lp, std::size_t extra) const {
    for (std::size_t u = 0; u < nu_; ++u) {
      std::vector<double> row(nu_ * nx_ + extra, 0.0);
      for (std::size_t x = 0; x < nx_; ++x) row[u * nx_ + x] = 1.0;
      lp.add(std::move(row), Relation::kEqual, 1.0);
    }
  }

  // sum_{u,x} g(u,x) (Dd[u,x,c,sigma(c)] - Dd[u,x,c,k]) (+ slack) <= 0.
  void add_preference_rows(LinearProgram& lp, const std::vector<std::size_t>& sigma,
                           bool with_slack) const {
    const std::size_t n = nu_ * nx_;
    for (std::size_t c = 0; c < nc_; ++c) {
      for (std::size_t k = 0; k < nw_; ++k) {
        if (k == sigma[c]) continue;
        std::vector<double> row(n + (with_slack ? 1 : 0), 0.0);
        double scale = 0.0;
        for (std::size_t u = 0; u < nu_; ++u)
          for (std::size_t x = 0; x < nx_; ++x) {
            const double d = form_.decoder[form_.index(u, x, c, sigma[c])] -
                             form_.decoder[form_.index(u, x, c, k)];
            row[u * nx_ + x] = d;
            scale = std::max(scale, std::abs(d));
          }
        if (scale == 0.0) continue;
        if (with_slack) {
          if (is_constant_on_simplex(row, scale)) continue;
          row[n] = 1.0;
        }
        lp.add(std::move(row), Relation::kLessEqual, 0.0);
      }
    }
  }

  // Linear forms that take the same value on every product of simplices
  // cannot be made strict; leave them out of the interior search.
  bool is_constant_on_simplex(const std::vector<double>& row, double scale) const {
    const double eps = 1e-12 * scale;
    for (std::size_t u = 0; u < nu_; ++u)
      for (std::size_t x = 1; x < nx_; ++x)
        if (std::abs(row[u * nx_ + x] - row[u * nx_]) > eps) return false;
    return true;
  }

  const BilinearDistortion& form_;
  std::size_t nc_, nw_, nu_, nx_;
  std::size_t count_ = 0;
};

// Rate-constraint bookkeeping for the Stackelberg searches.
class RateGuard {
 public:
  RateGuard(const ChainModel& model, const SolverOptions& options)
      : model_(model), enforced_(options.enforce_rate_constraint) {
    if (!enforced_) return;
    z_ = options.z_kernel ? *options.z_kernel : model.channel;
    budget_ = rate_budget(model, options.capacity);
  }

  bool enforced() const { return enforced_; }

  Feasibility check(const ConditionalKernel& g) const {
    return feasibility_check(model_, EncoderStrategy{g}, z_, budget_);
  }

  bool accept(const ConditionalKernel& g) {
    if (!enforced_) return true;
    const bool ok = check(g).feasible;
    if (ok) probes_.push_back(g);
    return ok;
  }

  // Bisection from an infeasible point toward the nearest feasible probe;
  // the feasible set is convex, so the boundary along the segment is unique.
  std::optional<ConditionalKernel> repair(const ConditionalKernel& g) const {
    if (probes_.empty()) return std::nullopt;
    const ConditionalKernel* nearest = nullptr;
    double best = kInf;
    for (const auto& p : probes_) {
      double d = 0.0;
      for (std::size_t i = 0; i < g.values().size(); ++i) {
        d += std::abs(p.values()[i] - g.values()[i]);
      }
      if (d < best) {
        best = d;
        nearest = &p;
      }
    }
    double lo = 0.0, hi = 1.0;  // weight on the feasible probe
    for (int i = 0; i < 50; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (check(mix(*nearest, g, mid)).feasible) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return mix(*nearest, g, hi);
  }

  std::optional<double> margin(const ConditionalKernel& g) const {
    if (!enforced_) return std::nullopt;
    return check(g).margin;
  }

 private:
  const ChainModel& model_;
  bool enforced_ = false;
  ConditionalKernel z_;
  RateBudget budget_;
  std::vector<ConditionalKernel> probes_;
};

struct Best {
  double value = kInf;
  ConditionalKernel g;
  CommittedValue response;
  bool deterministic = false;
};

EquilibriumOutcome make_chain_outcome(EquilibriumKind kind,
                                      const BilinearDistortion& form,
                                      const Best& best) {
  EquilibriumOutcome out;
  out.kind = kind;
  out.encoder = best.g;
  out.decoder = best.response.decoder;
  out.enc_value = evaluate(form, best.g, out.decoder, Party::kEncoder);
  out.dec_value = evaluate(form, best.g, out.decoder, Party::kDecoder);
  out.diagnostics.tie_contexts = best.response.tie_contexts;
  return out;
}

// ---------------------------------------------------------------------------
// Bimatrix helpers.

std::vector<double> column_costs(const Matrix& m, std::span<const double> row_mix) {
  std::vector<double> out(m.front().size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (row_mix[i] == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += row_mix[i] * m[i][j];
  }
  return out;
}

std::vector<double> row_costs(const Matrix& m, std::span<const double> col_mix) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < col_mix.size(); ++j) out[i] += m[i][j] * col_mix[j];
  return out;
}

std::vector<double> unit(std::size_t n, std::size_t at) {
  std::vector<double> v(n, 0.0);
  v[at] = 1.0;
  return v;
}

ConditionalKernel as_row_kernel(std::vector<double> mix) {
  const std::size_t n = mix.size();
  return ConditionalKernel(1, n, std::move(mix));
}

// Best (or worst) column for the encoder inside the decoder's response set.
std::size_t pick_column(const ReducedGame& game, std::span<const double> x,
                        const std::vector<std::size_t>& members, bool worst) {
  const auto enc = column_costs(game.enc_distortion, x);
  std::size_t pick = members.front();
  for (std::size_t j : members) {
    if (worst ? enc[j] > enc[pick] : enc[j] < enc[pick]) pick = j;
  }
  return pick;
}

EquilibriumOutcome make_game_outcome(EquilibriumKind kind, const ReducedGame& game,
                                     std::vector<double> x, std::vector<double> y) {
  EquilibriumOutcome out;
  out.kind = kind;
  out.enc_value = game_value(game.enc_distortion, x, y);
  out.dec_value = game_value(game.dec_distortion, x, y);
  out.encoder = as_row_kernel(std::move(x));
  out.decoder = as_row_kernel(std::move(y));
  return out;
}

struct GameCommitted {
  double value = kInf;
  std::vector<double> x;
  std::size_t column = 0;
  std::size_t ties = 0;
};

GameCommitted committed(const ReducedGame& game, std::vector<double> x,
                        double tol, bool worst) {
  const auto members = best_response_columns(game, x, tol);
  GameCommitted out;
  out.column = pick_column(game, x, members, worst);
  out.ties = members.size();
  out.value = game_value(game.enc_distortion, x, unit(game.cols(), out.column));
  out.x = std::move(x);
  return out;
}

// min_x sum_i x_i E[i][j] subject to column j being a decoder best response.
std::optional<std::pair<std::vector<double>, double>> game_column_lp(
    const ReducedGame& game, std::size_t j) {
  const std::size_t m = game.rows();
  LinearProgram lp(m);
  for (std::size_t i = 0; i < m; ++i) lp.objective[i] = game.enc_distortion[i][j];
  lp.add(std::vector<double>(m, 1.0), Relation::kEqual, 1.0);
  for (std::size_t k = 0; k < game.cols(); ++k) {
    if (k == j) continue;
    std::vector<double> row(m);
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = game.dec_distortion[i][j] - game.dec_distortion[i][k];
      nonzero |= row[i] != 0.0;
    }
    if (nonzero) lp.add(std::move(row), Relation::kLessEqual, 0.0);
  }
  auto res = solve_lp(lp);
  if (!res.optimal()) return std::nullopt;
  return std::make_pair(normalized(res.x), res.objective);
}

// A mixture where column j is strictly preferred to every column that is not
// identical to it in decoder cost; returns the slack.
std::optional<std::pair<std::vector<double>, double>> game_column_interior(
    const ReducedGame& game, std::size_t j) {
  const std::size_t m = game.rows();
  LinearProgram lp(m + 1);
  lp.objective[m] = -1.0;
  std::vector<double> sum(m + 1, 1.0);
  sum[m] = 0.0;
  lp.add(sum, Relation::kEqual, 1.0);
  std::size_t strict = 0;
  for (std::size_t k = 0; k < game.cols(); ++k) {
    if (k == j) continue;
    std::vector<double> row(m + 1, 0.0);
    bool constant = true;
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = game.dec_distortion[i][j] - game.dec_distortion[i][k];
      if (std::abs(row[i] - row[0]) > 1e-12 * (1.0 + std::abs(row[0]))) constant = false;
    }
    if (constant) continue;
    row[m] = 1.0;
    lp.add(std::move(row), Relation::kLessEqual, 0.0);
    ++strict;
  }
  if (strict == 0) return std::nullopt;
  std::vector<double> cap(m + 1, 0.0);
  cap[m] = 1.0;
  lp.add(cap, Relation::kLessEqual, 1.0);
  auto res = solve_lp(lp);
  if (!res.optimal() || res.x[m] <= 0.0) return std::nullopt;
  std::vector<double> x(res.x.begin(), res.x.begin() + m);
  return std::make_pair(normalized(x), res.x[m]);
}

std::vector<double> blend(std::span<const double> a, std::span<const double> b,
                          double eps) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - eps) * a[i] + eps * b[i];
  return out;
}

// ---------------------------------------------------------------------------
// Nash equilibria of a bimatrix (both players minimize).

struct Subgame {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

Subgame eliminate_dominated(const ReducedGame& game) {
  Subgame sg;
  sg.rows.resize(game.rows());
  sg.cols.resize(game.cols());
  std::iota(sg.rows.begin(), sg.rows.end(), 0);
  std::iota(sg.cols.begin(), sg.cols.end(), 0);
  const double work = static_cast<double>(game.rows()) * game.cols() *
                      std::max(game.rows(), game.cols());
  if (work > 5e7) return sg;

  constexpr double eps = 1e-12;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < sg.rows.size(); ++a) {
      const std::size_t i = sg.rows[a];
      bool dominated = false;
      for (std::size_t i2 : sg.rows) {
        if (i2 == i) continue;
        bool all = true;
        for (std::size_t j : sg.cols) {
          if (!(game.enc_distortion[i2][j] < game.enc_distortion[i][j] - eps)) {
            all = false;
            break;
          }
        }
        if (all) {
          dominated = true;
          break;
        }
      }
      if (dominated) {
        sg.rows.erase(sg.rows.begin() + a);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t b = 0; b < sg.cols.size(); ++b) {
      const std::size_t j = sg.cols[b];
      bool dominated = false;
      for (std::size_t j2 : sg.cols) {
        if (j2 == j) continue;
        bool all = true;
        for (std::size_t i : sg.rows) {
          if (!(game.dec_distortion[i][j2] < game.dec_distortion[i][j] - eps)) {
            all = false;
            break;
          }
        }
        if (all) {
          dominated = true;
          break;
        }
      }
      if (dominated) {
        sg.cols.erase(sg.cols.begin() + b);
        changed = true;
        break;
      }
    }
  }
  return sg;
}

// Mixture over `support` (indices into `own`) making the opponent indifferent
// over `opp_support` and weakly worse elsewhere. `cost(i, j)` is the
// opponent's cost when we play own[i] and they play opp[j]. Support
// positivity is maximized.
template <typename Cost>
std::optional<std::vector<double>> indifference_mix(
    std::size_t own_size, const std::vector<std::size_t>& support,
    std::size_t opp_size, const std::vector<bool>& opp_in_support, Cost cost) {
  const std::size_t k = support.size();
  // Variables: mix over support (k), value v (free), slack s.
  LinearProgram lp(k + 2);
  const std::size_t v = k, s = k + 1;
  lp.set_free(v);
  lp.objective[s] = -1.0;
  std::vector<double> sum(k + 2, 0.0);
  for (std::size_t a = 0; a < k; ++a) sum[a] = 1.0;
  lp.add(sum, Relation::kEqual, 1.0);
  for (std::size_t j = 0; j < opp_size; ++j) {
    std::vector<double> row(k + 2, 0.0);
    for (std::size_t a = 0; a < k; ++a) row[a] = cost(support[a], j);
    row[v] = -1.0;
    lp.add(std::move(row),
           opp_in_support[j] ? Relation::kEqual : Relation::kGreaterEqual, 0.0);
  }
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<double> row(k + 2, 0.0);
    row[a] = 1.0;
    row[s] = -1.0;
    lp.add(std::move(row), Relation::kGreaterEqual, 0.0);
  }
  std::vector<double> cap(k + 2, 0.0);
  cap[s] = 1.0;
  lp.add(cap, Relation::kLessEqual, 1.0);
  auto res = solve_lp(lp);
  if (!res.optimal() || res.x[s] <= 1e-9) return std::nullopt;
  std::vector<double> mix(own_size, 0.0);
  for (std::size_t a = 0; a < k; ++a) mix[support[a]] = std::max(0.0, res.x[a]);
  return normalized(mix);
}

// Largest gain any player gets from a unilateral deviation (minimizing).
double deviation_gain(const ReducedGame& game, std::span<const double> x,
                      std::span<const double> y) {
  const auto enc_rows = row_costs(game.enc_distortion, y);
  const auto dec_cols = column_costs(game.dec_distortion, x);
  const double ve = game_value(game.enc_distortion, x, y);
  const double vd = game_value(game.dec_distortion, x, y);
  return std::max(ve - *std::min_element(enc_rows.begin(), enc_rows.end()),
                  vd - *std::min_element(dec_cols.begin(), dec_cols.end()));
}

bool same_profile(const EquilibriumOutcome& a, const std::vector<double>& x,
                  const std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(a.encoder.values()[i] - x[i]) > 1e-9) return false;
  for (std::size_t j = 0; j < y.size(); ++j)
    if (std::abs(a.decoder.values()[j] - y[j]) > 1e-9) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::kOse: return "OSE";
    case EquilibriumKind::kRse: return "RSE";
    case EquilibriumKind::kNe: return "NE";
  }
  return "?";
}

const char* to_string(Commitment c) {
  return c == Commitment::kMixed ? "mixed" : "pure";
}

void validate_game(const ReducedGame& game) {
  if (game.rows() == 0 || game.cols() == 0) {
    throw ValidationError("game: empty distortion matrix");
  }
  if (game.dec_distortion.size() != game.rows()) {
    throw DimensionError("game: encoder and decoder matrices differ in rows");
  }
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (game.enc_distortion[i].size() != game.cols() ||
        game.dec_distortion[i].size() != game.cols()) {
      throw DimensionError("game: row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (!std::isfinite(game.enc_distortion[i][j]) ||
          !std::isfinite(game.dec_distortion[i][j])) {
        throw ValidationError("game: entries must be finite");
      }
    }
  }
  if (!game.enc_labels.empty() && game.enc_labels.size() != game.rows()) {
    throw DimensionError("game: enc_labels size mismatch");
  }
  if (!game.dec_labels.empty() && game.dec_labels.size() != game.cols()) {
    throw DimensionError("game: dec_labels size mismatch");
  }
}

std::string Diagnostics::summary() const {
  std::ostringstream os;
  os.precision(12);
  os << "ties=" << tie_contexts.size();
  if (feasibility_margin) os << ";margin=" << *feasibility_margin;
  if (resolution) os << ";resolution=" << *resolution;
  if (error_bound) os << ";error_bound=" << *error_bound;
  if (lower_bound) os << ";lower_bound=" << *lower_bound;
  if (infimum) os << ";infimum=" << *infimum;
  if (attained) os << ";attained=" << (*attained ? 1 : 0);
  os << ";exact=" << (exact ? 1 : 0);
  if (mixed_improved) os << ";mixed_improved=1";
  if (degenerate) os << ";degenerate=1";
  for (const auto& n : notes) os << ";" << n;
  return os.str();
}

bool BestResponseSet::contains(const DecoderStrategy& h, double tolerance) const {
  for (const auto& ctx : per_context) {
    auto row = h.kernel.row(ctx.context);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const bool member =
          std::find(ctx.members.begin(), ctx.members.end(), k) != ctx.members.end();
      if (!member && row[k] > tolerance) return false;
    }
  }
  return true;
}

BestResponseSet decoder_best_responses(const ChainModel& model,
                                       const EncoderStrategy& g,
                                       const SolverOptions& options) {
  require_compatible(model, g);
  const auto form = bilinear_form(model);
  const auto cc = context_costs(form, g.kernel);
  const auto& s = model.sizes;
  BestResponseSet out;
  for (std::size_t c = 0; c < s.contexts(); ++c) {
    const double p = cc.probability[c];
    if (!(p > 0.0)) {
      out.zero_prob_contexts.push_back(c);
      continue;
    }
    ContextResponse r;
    r.context = c;
    r.y = c / s.xhat;
    r.xhat = c % s.xhat;
    r.probability = p;
    r.min_value = kInf;
    for (std::size_t k = 0; k < s.what; ++k) {
      r.min_value = std::min(r.min_value, cc.decoder[c * s.what + k] / p);
    }
    for (std::size_t k = 0; k < s.what; ++k) {
      if (cc.decoder[c * s.what + k] / p <= r.min_value + options.tie_tolerance) {
        r.members.push_back(k);
      }
    }
    out.per_context.push_back(std::move(r));
  }
  return out;
}

CommittedValue optimistic_value(const BilinearDistortion& form,
                                const ConditionalKernel& g, double tie_tolerance) {
  return select_response(form, g, tie_tolerance, /*worst=*/false);
}

CommittedValue pessimistic_value(const BilinearDistortion& form,
                                 const ConditionalKernel& g, double tie_tolerance) {
  return select_response(form, g, tie_tolerance, /*worst=*/true);
}

double game_value(const Matrix& m, std::span<const double> row_mix,
                  std::span<const double> col_mix) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (row_mix[i] == 0.0) continue;
    for (std::size_t j = 0; j < col_mix.size(); ++j) {
      v += row_mix[i] * col_mix[j] * m[i][j];
    }
  }
  return v;
}

std::vector<std::size_t> best_response_columns(const ReducedGame& game,
                                               std::span<const double> row_mix,
                                               double tie_tolerance) {
  const auto costs = column_costs(game.dec_distortion, row_mix);
  const double lo = *std::min_element(costs.begin(), costs.end());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < costs.size(); ++j) {
    if (costs[j] <= lo + tie_tolerance) out.push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain-model Stackelberg solvers.

EquilibriumOutcome solve_ose(const ChainModel& model, const SolverOptions& options) {
  const auto form = bilinear_form(model);
  const auto& s = model.sizes;
  RateGuard guard(model, options);
  Best best;
  std::size_t candidates = 0;

  auto consider = [&](const ConditionalKernel& g, bool deterministic) {
    ++candidates;
    auto cv = optimistic_value(form, g, options.tie_tolerance);
    if (cv.enc_value < best.value - kPruneEps) {
      best = Best{cv.enc_value, g, std::move(cv), deterministic};
    }
  };

  for_each_deterministic(s.u, s.x, [&](const std::vector<std::size_t>& choice) {
    auto g = ConditionalKernel::deterministic(choice, s.x);
    if (guard.accept(g)) consider(g, true);
  });

  bool constraint_active = false;
  double rejected_bound = kInf;
  if (options.commitment == Commitment::kMixed) {
    PatternSearch search(form, options);
    std::vector<double> lbs;
    const auto order = search.order(&lbs);
    for (std::size_t idx : order) {
      if (lbs[idx] >= best.value - kPruneEps) break;
      const auto sigma = search.pattern(idx);
      auto sol = search.closed_optimum(sigma);
      if (!sol || sol->value >= best.value - kPruneEps) continue;
      if (guard.accept(sol->g)) {
        consider(sol->g, false);
      } else {
        constraint_active = true;
        rejected_bound = std::min(rejected_bound, sol->value);
        if (auto fixed = guard.repair(sol->g)) {
          if (guard.accept(*fixed)) consider(*fixed, false);
        }
      }
    }
  }
  if (!std::isfinite(best.value)) {
    throw ValidationError("solve_ose: no feasible encoder strategy");
  }

  auto out = make_chain_outcome(EquilibriumKind::kOse, form, best);
  auto& d = out.diagnostics;
  d.candidates = candidates;
  d.resolution = options.grid_resolution;
  d.error_bound = grid_error_bound(form, options.grid_resolution);
  d.feasibility_margin = guard.margin(best.g);
  d.exact = !constraint_active || rejected_bound >= best.value - kPruneEps;
  d.lower_bound = std::min(out.enc_value, rejected_bound);
  d.notes.push_back(std::string("commitment=") + to_string(options.commitment));
  if (guard.enforced()) {
    d.notes.push_back(constraint_active ? "rate_constraint=active_repaired"
                                        : "rate_constraint=slack");
  }
  return out;
}

EquilibriumOutcome solve_rse(const ChainModel& model, const SolverOptions& options) {
  const auto form = bilinear_form(model);
  const auto& s = model.sizes;
  RateGuard guard(model, options);
  Best best;
  double best_deterministic = kInf;
  std::size_t candidates = 0;

  auto consider = [&](const ConditionalKernel& g, bool deterministic) {
    ++candidates;
    auto cv = pessimistic_value(form, g, options.tie_tolerance);
    if (deterministic) best_deterministic = std::min(best_deterministic, cv.enc_value);
    if (cv.enc_value < best.value - kPruneEps) {
      best = Best{cv.enc_value, g, std::move(cv), deterministic};
    }
  };
  auto consider_checked = [&](const ConditionalKernel& g) {
    if (guard.accept(g)) {
      consider(g, false);
    } else if (auto fixed = guard.repair(g)) {
      if (guard.accept(*fixed)) consider(*fixed, false);
    }
  };

  for_each_deterministic(s.u, s.x, [&](const std::vector<std::size_t>& choice) {
    auto g = ConditionalKernel::deterministic(choice, s.x);
    if (guard.accept(g)) consider(g, true);
  });

  double resolution = 1.0;
  if (options.commitment == Commitment::kMixed) {
    const auto n_max = static_cast<std::size_t>(
        std::max(1.0, std::round(1.0 / options.grid_resolution)));
    const std::size_t n = grid_divisions(s.x, s.u, n_max, options.max_grid_points);
    resolution = 1.0 / static_cast<double>(n);
    for_each_grid_kernel(s.u, s.x, n, [&](const ConditionalKernel& g) {
      if (!guard.enforced() || guard.accept(g)) consider(g, false);
    });

    PatternSearch search(form, options);
    std::vector<double> lbs;
    const auto order = search.order(&lbs);
    for (std::size_t idx : order) {
      if (lbs[idx] >= best.value - kPruneEps) break;
      const auto sigma = search.pattern(idx);
      auto closed = search.closed_optimum(sigma);
      if (!closed || closed->value >= best.value - kPruneEps) continue;
      consider_checked(closed->g);
      auto inner = search.interior_point(sigma);
      if (!inner) continue;
      for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        if (eps * inner->value < kProbeMargin) break;
        consider_checked(mix(inner->g, closed->g, eps));
      }
    }
  }
  if (!std::isfinite(best.value)) {
    throw ValidationError("solve_rse: no feasible encoder strategy");
  }

  SolverOptions lower_opts = options;
  const auto ose = solve_ose(model, lower_opts);

  auto out = make_chain_outcome(EquilibriumKind::kRse, form, best);
  auto& d = out.diagnostics;
  d.candidates = candidates;
  d.resolution = resolution;
  d.error_bound = grid_error_bound(form, resolution);
  d.lower_bound = ose.enc_value;
  d.feasibility_margin = guard.margin(best.g);
  d.exact = out.enc_value <= ose.enc_value + kOrderingTolerance;
  d.mixed_improved = out.enc_value < best_deterministic - options.tie_tolerance;
  d.notes.push_back(std::string("commitment=") + to_string(options.commitment));
  if (!d.exact) d.notes.push_back("upper_bound");
  return out;
}

// ---------------------------------------------------------------------------
// Bimatrix Stackelberg solvers.

EquilibriumOutcome solve_ose(const ReducedGame& game, const SolverOptions& options) {
  validate_game(game);
  GameCommitted best;
  std::size_t candidates = 0;
  auto consider = [&](std::vector<double> x) {
    ++candidates;
    auto c = committed(game, std::move(x), options.tie_tolerance, false);
    if (c.value < best.value - kPruneEps) best = std::move(c);
  };
  for (std::size_t i = 0; i < game.rows(); ++i) consider(unit(game.rows(), i));
  if (options.commitment == Commitment::kMixed) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (auto sol = game_column_lp(game, j)) consider(sol->first);
    }
  }
  auto out = make_game_outcome(EquilibriumKind::kOse, game, best.x,
                               unit(game.cols(), best.column));
  out.diagnostics.candidates = candidates;
  out.diagnostics.lower_bound = out.enc_value;
  if (best.ties > 1) out.diagnostics.tie_contexts.push_back(0);
  out.diagnostics.notes.push_back(std::string("commitment=") +
                                  to_string(options.commitment));
  return out;
}

EquilibriumOutcome solve_rse(const ReducedGame& game, const SolverOptions& options) {
  validate_game(game);
  const double tol = options.tie_tolerance;
  GameCommitted best;
  double best_pure = kInf;
  std::size_t candidates = 0;
  auto consider = [&](std::vector<double> x) {
    ++candidates;
    auto c = committed(game, std::move(x), tol, true);
    if (c.value < best.value - kPruneEps) best = std::move(c);
  };
  for (std::size_t i = 0; i < game.rows(); ++i) {
    consider(unit(game.rows(), i));
    best_pure = std::min(best_pure, best.value);
  }

  Diagnostics diag;
  diag.notes.push_back(std::string("commitment=") + to_string(options.commitment));
  if (options.commitment == Commitment::kPure) {
    diag.infimum = best.value;
    diag.attained = true;
  } else if (game.cols() <= options.max_tie_set_columns) {
    // For every realizable decoder tie set S, the infimum of the worst tie
    // over the region where the response set is exactly S.
    const std::size_t m = game.rows(), n = game.cols();
    double best_inf = kInf;
    bool best_attained = false;
    std::vector<double> witness;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> in, out;
      for (std::size_t j = 0; j < n; ++j) ((mask >> j) & 1 ? in : out).push_back(j);
      const std::size_t j0 = in.front();
      auto tie_rows = [&](LinearProgram& lp, std::size_t width) {
        std::vector<double> sum(width, 0.0);
        for (std::size_t i = 0; i < m; ++i) sum[i] = 1.0;
        lp.add(sum, Relation::kEqual, 1.0);
        for (std::size_t a = 1; a < in.size(); ++a) {
          std::vector<double> row(width, 0.0);
          for (std::size_t i = 0; i < m; ++i) {
            row[i] = game.dec_distortion[i][j0] - game.dec_distortion[i][in[a]];
          }
          lp.add(std::move(row), Relation::kEqual, 0.0);
        }
      };

      // Strict region: max slack s with S strictly better than the rest.
      LinearProgram strict(m + 1);
      strict.objective[m] = -1.0;
      tie_rows(strict, m + 1);
      for (std::size_t l : out) {
        std::vector<double> row(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          row[i] = game.dec_distortion[i][j0] - game.dec_distortion[i][l];
        }
        row[m] = 1.0;
        strict.add(std::move(row), Relation::kLessEqual, 0.0);
      }
      std::vector<double> cap(m + 1, 0.0);
      cap[m] = 1.0;
      strict.add(cap, Relation::kLessEqual, 1.0);
      auto sres = solve_lp(strict);
      if (!sres.optimal() || sres.x[m] <= 10.0 * tol) continue;
      const double slack = sres.x[m];
      std::vector<double> interior(sres.x.begin(), sres.x.begin() + m);
      interior = normalized(interior);

      // Closed relaxation of min_x max_{j in S} E_j(x).
      LinearProgram value(m + 1);
      value.set_free(m);
      value.objective[m] = 1.0;
      tie_rows(value, m + 1);
      for (std::size_t l : out) {
        std::vector<double> row(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          row[i] = game.dec_distortion[i][j0] - game.dec_distortion[i][l];
        }
        value.add(std::move(row), Relation::kLessEqual, 0.0);
      }
      for (std::size_t j : in) {
        std::vector<double> row(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) row[i] = game.enc_distortion[i][j];
        row[m] = -1.0;
        value.add(std::move(row), Relation::kLessEqual, 0.0);
      }
      auto vres = solve_lp(value);
      if (!vres.optimal()) continue;
      ++candidates;
      const double inf_s = vres.x[m];
      std::vector<double> xs(vres.x.begin(), vres.x.begin() + m);
      xs = normalized(xs);
      auto at_closed = committed(game, xs, tol, true);
      const bool attained = at_closed.value <= inf_s + kOrderingTolerance;
      if (inf_s < best_inf - kPruneEps ||
          (inf_s <= best_inf + kPruneEps && attained && !best_attained)) {
        best_inf = inf_s;
        best_attained = attained;
        if (attained) {
          witness = xs;
        } else {
          const double eps = std::min(1.0, 1e-6 / slack);
          witness = blend(xs, interior, eps);
        }
      }
    }
    if (!witness.empty()) {
      auto c = committed(game, witness, tol, true);
      ++candidates;
      if (c.value <= best.value + kPruneEps || best_inf < best.value - kPruneEps) {
        best = std::move(c);
      }
    }
    diag.infimum = std::min(best_inf, best_pure);
    diag.attained = best.value <= *diag.infimum + kOrderingTolerance;
  } else {
    // Too many columns for tie-set enumeration: probe next to each column's
    // best-response region.
    for (std::size_t j = 0; j < game.cols(); ++j) {
      auto closed = game_column_lp(game, j);
      if (!closed || closed->second >= best.value - kPruneEps) continue;
      consider(closed->first);
      auto inner = game_column_interior(game, j);
      if (!inner) continue;
      for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        if (eps * inner->second < kProbeMargin) break;
        consider(blend(closed->first, inner->first, eps));
      }
    }
    diag.exact = false;
    diag.notes.push_back("upper_bound");
  }

  const auto ose = solve_ose(game, options);
  auto out = make_game_outcome(EquilibriumKind::kRse, game, best.x,
                               unit(game.cols(), best.column));
  diag.candidates = candidates;
  diag.lower_bound = ose.enc_value;
  diag.mixed_improved = out.enc_value < best_pure - tol;
  if (best.ties > 1) diag.tie_contexts.push_back(0);
  out.diagnostics = std::move(diag);
  return out;
}

// ---------------------------------------------------------------------------

ReducedGame reduce_to_bimatrix(const ChainModel& model, bool feasible_only,
                               const SolverOptions& options) {
  const auto form = bilinear_form(model);
  const auto& s = model.sizes;
  const std::size_t nc = s.contexts();
  const std::size_t rows = checked_power(s.x, s.u, options.max_reduced_cells,
                                         "deterministic encoder count");
  const std::size_t cols = checked_power(s.what, nc, options.max_reduced_cells,
                                         "deterministic decoder count");
  if (rows * cols > options.max_reduced_cells) {
    throw CapExceededError("reduced game would have " + std::to_string(rows * cols) +
                           " cells, cap is " +
                           std::to_string(options.max_reduced_cells));
  }

  std::optional<RateGuard> guard;
  if (feasible_only) {
    SolverOptions o = options;
    o.enforce_rate_constraint = true;
    guard.emplace(model, o);
  }

  ReducedGame game;
  for (std::size_t j = 0; j < cols; ++j) {
    auto sigma = decode(j, s.what, nc);
    std::string label = "h[";
    for (std::size_t c = 0; c < nc; ++c) label += std::to_string(sigma[c]);
    game.dec_labels.push_back(label + "]");
    game.dec_maps.push_back(std::move(sigma));
  }

  std::vector<double> enc_cost(nc * s.what), dec_cost(nc * s.what);
  for (std::size_t i = 0; i < rows; ++i) {
    auto choice = decode(i, s.x, s.u);
    std::string label = "g[";
    for (std::size_t u = 0; u < s.u; ++u) label += std::to_string(choice[u]);
    label += "]";
    if (guard && !guard->check(ConditionalKernel::deterministic(choice, s.x)).feasible) {
      game.excluded_encoders.push_back(label);
      continue;
    }
    std::fill(enc_cost.begin(), enc_cost.end(), 0.0);
    std::fill(dec_cost.begin(), dec_cost.end(), 0.0);
    for (std::size_t u = 0; u < s.u; ++u)
      for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t k = 0; k < s.what; ++k) {
          enc_cost[c * s.what + k] += form.encoder[form.index(u, choice[u], c, k)];
          dec_cost[c * s.what + k] += form.decoder[form.index(u, choice[u], c, k)];
        }
    std::vector<double> er(cols), dr(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      double e = 0.0, d = 0.0;
      for (std::size_t c = 0; c < nc; ++c) {
        e += enc_cost[c * s.what + game.dec_maps[j][c]];
        d += dec_cost[c * s.what + game.dec_maps[j][c]];
      }
      er[j] = e;
      dr[j] = d;
    }
    game.enc_distortion.push_back(std::move(er));
    game.dec_distortion.push_back(std::move(dr));
    game.enc_labels.push_back(std::move(label));
    game.enc_maps.push_back(std::move(choice));
  }
  if (game.enc_distortion.empty()) {
    throw ValidationError("reduce_to_bimatrix: no feasible deterministic encoder");
  }
  return game;
}

EncoderStrategy behavior_encoder(const ReducedGame& game,
                                 std::span<const double> row_mix,
                                 std::size_t x_size) {
  if (game.enc_maps.size() != game.rows()) {
    throw std::invalid_argument("behavior_encoder: game has no deterministic maps");
  }
  const std::size_t nu = game.enc_maps.front().size();
  std::vector<double> v(nu * x_size, 0.0);
  for (std::size_t i = 0; i < game.rows(); ++i)
    for (std::size_t u = 0; u < nu; ++u) v[u * x_size + game.enc_maps[i][u]] += row_mix[i];
  return EncoderStrategy{kernel_from_lp(v, nu, x_size)};
}

DecoderStrategy behavior_decoder(const ReducedGame& game,
                                 std::span<const double> col_mix,
                                 std::size_t what_size) {
  if (game.dec_maps.size() != game.cols()) {
    throw std::invalid_argument("behavior_decoder: game has no deterministic maps");
  }
  const std::size_t nc = game.dec_maps.front().size();
  std::vector<double> v(nc * what_size, 0.0);
  for (std::size_t j = 0; j < game.cols(); ++j)
    for (std::size_t c = 0; c < nc; ++c) v[c * what_size + game.dec_maps[j][c]] += col_mix[j];
  return DecoderStrategy{kernel_from_lp(v, nc, what_size)};
}

std::vector<EquilibriumOutcome> solve_ne(const ReducedGame& game,
                                         const SolverOptions& options) {
  validate_game(game);
  const double eps = kOrderingTolerance;
  const Subgame sg = eliminate_dominated(game);
  std::vector<EquilibriumOutcome> found;
  bool truncated = false;

  auto record = [&](std::vector<double> x, std::vector<double> y, bool degenerate,
                    const char* method) {
    if (found.size() >= options.max_equilibria) {
      truncated = true;
      return;
    }
    if (deviation_gain(game, x, y) > eps) return;
    for (const auto& e : found) {
      if (same_profile(e, x, y)) return;
    }
    auto out = make_game_outcome(EquilibriumKind::kNe, game, std::move(x), std::move(y));
    out.diagnostics.degenerate = degenerate;
    out.diagnostics.notes.push_back(method);
    found.push_back(std::move(out));
  };

  const std::size_t m = sg.rows.size(), n = sg.cols.size();
  if (m <= options.support_cap && n <= options.support_cap) {
    // Support enumeration on the undominated subgame, smallest supports first.
    std::vector<std::size_t> row_masks, col_masks;
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) row_masks.push_back(mask);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) col_masks.push_back(mask);
    auto by_size = [](std::size_t a, std::size_t b) {
      const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
      return pa != pb ? pa < pb : a < b;
    };
    std::sort(row_masks.begin(), row_masks.end(), by_size);
    std::sort(col_masks.begin(), col_masks.end(), by_size);
    for (std::size_t rm : row_masks) {
      std::vector<std::size_t> rows;
      std::vector<bool> row_in(m, false);
      for (std::size_t a = 0; a < m; ++a)
        if ((rm >> a) & 1) {
          rows.push_back(a);
          row_in[a] = true;
        }
      for (std::size_t cm : col_masks) {
        std::vector<std::size_t> cols;
        std::vector<bool> col_in(n, false);
        for (std::size_t b = 0; b < n; ++b)
          if ((cm >> b) & 1) {
            cols.push_back(b);
            col_in[b] = true;
          }
        auto x = indifference_mix(m, rows, n, col_in, [&](std::size_t a, std::size_t b) {
          return game.dec_distortion[sg.rows[a]][sg.cols[b]];
        });
        if (!x) continue;
        auto y = indifference_mix(n, cols, m, row_in, [&](std::size_t b, std::size_t a) {
          return game.enc_distortion[sg.rows[a]][sg.cols[b]];
        });
        if (!y) continue;
        std::vector<double> fx(game.rows(), 0.0), fy(game.cols(), 0.0);
        for (std::size_t a = 0; a < m; ++a) fx[sg.rows[a]] = (*x)[a];
        for (std::size_t b = 0; b < n; ++b) fy[sg.cols[b]] = (*y)[b];
        record(std::move(fx), std::move(fy), rows.size() != cols.size(),
               "support_enumeration");
      }
    }
  } else {
    // Pure equilibria by direct check, then best-response iteration.
    std::vector<double> col_min(game.cols(), kInf);
    for (std::size_t i : sg.rows)
      for (std::size_t j : sg.cols) col_min[j] = std::min(col_min[j], game.enc_distortion[i][j]);
    for (std::size_t i : sg.rows) {
      double lo = kInf;
      for (std::size_t j : sg.cols) lo = std::min(lo, game.dec_distortion[i][j]);
      for (std::size_t j : sg.cols) {
        if (game.dec_distortion[i][j] <= lo + eps &&
            game.enc_distortion[i][j] <= col_min[j] + eps) {
          record(unit(game.rows(), i), unit(game.cols(), j), false, "pure_check");
        }
      }
    }
    for (std::size_t start : sg.rows) {
      std::set<std::pair<std::size_t, std::size_t>> seen;
      std::size_t i = start;
      while (true) {
        std::size_t j = sg.cols.front();
        for (std::size_t c : sg.cols)
          if (game.dec_distortion[i][c] < game.dec_distortion[i][j]) j = c;
        std::size_t i2 = i;
        for (std::size_t r : sg.rows)
          if (game.enc_distortion[r][j] < game.enc_distortion[i2][j]) i2 = r;
        if (i2 == i) {
          record(unit(game.rows(), i), unit(game.cols(), j), false, "best_response_iteration");
          break;
        }
        if (!seen.insert({i, j}).second) break;  // cycle
        i = i2;
      }
    }
  }
  for (auto& e : found) {
    if (sg.rows.size() != game.rows() || sg.cols.size() != game.cols()) {
      e.diagnostics.notes.push_back("dominance_reduced=" + std::to_string(m) + "x" +
                                    std::to_string(n));
    }
    if (m > options.support_cap || n > options.support_cap) {
      e.diagnostics.exact = false;
      e.diagnostics.notes.push_back("fallback=pure+best_response");
    }
    if (truncated) e.diagnostics.notes.push_back("truncated");
  }
  return found;
}

std::vector<EquilibriumOutcome> solve_ne(const ChainModel& model,
                                         const SolverOptions& options) {
  const auto game = reduce_to_bimatrix(model, options.enforce_rate_constraint, options);
  const auto form = bilinear_form(model);
  auto ne = solve_ne(game, options);
  std::optional<RateGuard> guard;
  if (options.enforce_rate_constraint) guard.emplace(model, options);
  for (auto& e : ne) {
    const auto g = behavior_encoder(game, e.encoder.values(), model.sizes.x);
    const auto h = behavior_decoder(game, e.decoder.values(), model.sizes.what);
    e.encoder = g.kernel;
    e.decoder = h.kernel;
    e.enc_value = evaluate(form, g.kernel, h.kernel, Party::kEncoder);
    e.dec_value = evaluate(form, g.kernel, h.kernel, Party::kDecoder);
    if (guard) e.diagnostics.feasibility_margin = guard->margin(g.kernel);
  }
  return ne;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Instance>
OrderingAudit audit_impl(const Instance& instance, const SolverOptions& options) {
  OrderingAudit a;
  a.ose = solve_ose(instance, options);
  a.rse = solve_rse(instance, options);
  a.ne = solve_ne(instance, options);
  a.rse_at_least_ose = a.rse.enc_value >= a.ose.enc_value - kOrderingTolerance;
  a.ose_at_most_every_ne = true;
  a.some_ne_at_least_rse = false;
  for (const auto& e : a.ne) {
    if (a.ose.enc_value > e.enc_value + kOrderingTolerance) a.ose_at_most_every_ne = false;
    if (a.rse.enc_value <= e.enc_value + kOrderingTolerance) a.some_ne_at_least_rse = true;
  }
  return a;
}

}  // namespace

OrderingAudit ordering_audit(const ChainModel& model, const SolverOptions& options) {
  return audit_impl(model, options);
}

OrderingAudit ordering_audit(const ReducedGame& game, const SolverOptions& options) {
  return audit_impl(game, options);
}

}  // namespace stratcomm
