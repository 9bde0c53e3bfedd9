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

#include "stratcomm/info_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stratcomm {
namespace {

void require_source_and_matrix(const FiniteDistribution& source,
                               const Matrix& distortion) {
  if (auto msg = source.check(); !msg.empty()) {
    throw ValidationError("source: " + msg);
  }
  if (distortion.size() != source.size()) {
    throw DimensionError("distortion matrix must have one row per source symbol");
  }
  const std::size_t cols = distortion.front().size();
  if (cols == 0) throw DimensionError("distortion matrix has no columns");
  for (const auto& row : distortion) {
    if (row.size() != cols) throw DimensionError("distortion matrix is ragged");
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("distortion entries must be finite");
    }
  }
}

double mutual_information_of(std::span<const double> input,
                             const ConditionalKernel& channel,
                             std::vector<double>* divergences) {
  const std::size_t nx = channel.inputs();
  const std::size_t ny = channel.outputs();
  std::vector<double> q(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) q[y] += input[x] * channel(x, y);
  double mi = 0.0;
  divergences->assign(nx, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    (*divergences)[x] = kl_divergence(channel.row(x), q);
    if (input[x] > 0.0) mi += input[x] * (*divergences)[x];
  }
  return mi;
}

}  // namespace

CapacityResult channel_capacity(const ConditionalKernel& channel,
                                const IterationOptions& options) {
  if (auto msg = channel.check(); !msg.empty()) {
    throw ValidationError("channel_capacity: non-stochastic kernel: " + msg);
  }
  if (!(options.tolerance > 0.0)) {
    throw std::invalid_argument("channel_capacity: tolerance must be > 0");
  }
  const std::size_t nx = channel.inputs();
  std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> div;

  CapacityResult out;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double lower = mutual_information_of(p, channel, &div);
    double upper = 0.0;
    for (std::size_t x = 0; x < nx; ++x) upper = std::max(upper, div[x]);
    out.history.push_back(lower);
    out.iterations = it + 1;
    out.lower_bound = lower;
    out.upper_bound = upper;
    if (upper - lower <= options.tolerance) {
      out.converged = true;
      break;
    }
    // p(x) <- p(x) 2^{D_x} / sum; shift by the max exponent for stability.
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      p[x] *= std::exp2(div[x] - upper);
      z += p[x];
    }
    for (auto& v : p) v /= z;
  }
  out.capacity = std::max(0.0, out.lower_bound);
  out.optimal_input = FiniteDistribution(p);
  return out;
}

RateBudget rate_budget(double capacity, double rate_ratio) {
  return RateBudget{capacity, rate_ratio, rate_ratio * capacity};
}

RateBudget rate_budget(const ChainModel& model, const IterationOptions& options) {
  return rate_budget(channel_capacity(model.channel, options).capacity,
                     model.rate_ratio);
}

double min_distortion(const FiniteDistribution& source, const Matrix& distortion) {
  require_source_and_matrix(source, distortion);
  double d = 0.0;
  for (std::size_t w = 0; w < source.size(); ++w) {
    d += source[w] * *std::min_element(distortion[w].begin(), distortion[w].end());
  }
  return d;
}

double zero_rate_distortion(const FiniteDistribution& source,
                            const Matrix& distortion) {
  require_source_and_matrix(source, distortion);
  const std::size_t cols = distortion.front().size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cols; ++k) {
    double d = 0.0;
    for (std::size_t w = 0; w < source.size(); ++w) d += source[w] * distortion[w][k];
    best = std::min(best, d);
  }
  return best;
}

RDPoint rate_distortion_point(const FiniteDistribution& source,
                              const Matrix& distortion, double multiplier,
                              const IterationOptions& options) {
  require_source_and_matrix(source, distortion);
  if (!(multiplier >= 0.0) || !std::isfinite(multiplier)) {
    throw std::invalid_argument("rate_distortion: multipliers must be finite and >= 0");
  }
  if (multiplier == 0.0) {
    return RDPoint{zero_rate_distortion(source, distortion), 0.0, 0.0, true};
  }
  const std::size_t nw = source.size();
  const std::size_t nk = distortion.front().size();

  // Row-shifted kernel 2^{-s (d - min_row d)}; the shift cancels in Q.
  std::vector<double> a(nw * nk);
  for (std::size_t w = 0; w < nw; ++w) {
    const double lo = *std::min_element(distortion[w].begin(), distortion[w].end());
    for (std::size_t k = 0; k < nk; ++k) {
      a[w * nk + k] = std::exp2(-multiplier * (distortion[w][k] - lo));
    }
  }

  std::vector<double> q(nk, 1.0 / static_cast<double>(nk));
  std::vector<double> z(nw), c(nk);
  RDPoint point;
  point.lagrange_multiplier = multiplier;
  point.converged = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    for (std::size_t w = 0; w < nw; ++w) {
      double s = 0.0;
      for (std::size_t k = 0; k < nk; ++k) s += q[k] * a[w * nk + k];
      z[w] = s;
    }
    double cmax = 0.0, avg_log = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
      double s = 0.0;
      for (std::size_t w = 0; w < nw; ++w) {
        if (source[w] > 0.0) s += source[w] * a[w * nk + k] / z[w];
      }
      c[k] = s;
      if (q[k] > 0.0) {
        cmax = std::max(cmax, s);
        if (s > 0.0) avg_log += q[k] * s * std::log2(s);
      }
    }
    // Blahut's bracket on the Lagrangian.
    const double gap = std::log2(cmax) - avg_log;
    for (std::size_t k = 0; k < nk; ++k) q[k] *= c[k];
    double total = 0.0;
    for (double v : q) total += v;
    for (auto& v : q) {
      v /= total;
      // Outputs this far below the rest are unused; left in, their products
      // with the source underflow and break the rate computation.
      if (v < 1e-250) v = 0.0;
    }
    if (gap <= options.tolerance) {
      point.converged = true;
      break;
    }
  }

  // Test channel from the final output marginal.
  std::vector<double> out(nk, 0.0);
  std::vector<double> cond(nw * nk);
  double dist = 0.0;
  for (std::size_t w = 0; w < nw; ++w) {
    double s = 0.0;
    for (std::size_t k = 0; k < nk; ++k) s += q[k] * a[w * nk + k];
    for (std::size_t k = 0; k < nk; ++k) {
      cond[w * nk + k] = q[k] * a[w * nk + k] / s;
      out[k] += source[w] * cond[w * nk + k];
      dist += source[w] * cond[w * nk + k] * distortion[w][k];
    }
  }
  double rate = 0.0;
  for (std::size_t w = 0; w < nw; ++w) {
    if (source[w] <= 0.0) continue;
    rate += source[w] *
            kl_divergence(std::span<const double>(cond).subspan(w * nk, nk), out);
  }
  point.distortion = dist;
  point.rate = std::max(0.0, rate);
  return point;
}

std::vector<RDPoint> rate_distortion_curve(const FiniteDistribution& source,
                                           const Matrix& distortion,
                                           const std::vector<double>& multipliers,
                                           const IterationOptions& options) {
  if (multipliers.empty()) {
    throw std::invalid_argument("rate_distortion_curve: empty multiplier list");
  }
  std::vector<RDPoint> out;
  out.reserve(multipliers.size());
  for (double s : multipliers) {
    out.push_back(rate_distortion_point(source, distortion, s, options));
  }
  return out;
}

double rate_at_distortion(const FiniteDistribution& source,
                          const Matrix& distortion, double target,
                          const IterationOptions& options) {
  const double dmax = zero_rate_distortion(source, distortion);
  const double dmin = min_distortion(source, distortion);
  if (target >= dmax) return 0.0;
  if (target < dmin - 1e-12) return std::numeric_limits<double>::infinity();

  double lo = 0.0;
  double hi = 1.0;
  RDPoint at_hi = rate_distortion_point(source, distortion, hi, options);
  while (at_hi.distortion > target && hi < 1e4) {
    lo = hi;
    hi *= 2.0;
    at_hi = rate_distortion_point(source, distortion, hi, options);
  }
  if (at_hi.distortion > target) return at_hi.rate;  // target ~ dmin

  RDPoint best = at_hi;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    RDPoint p = rate_distortion_point(source, distortion, mid, options);
    if (p.distortion > target) {
      lo = mid;
    } else {
      hi = mid;
      best = p;
    }
    if (std::abs(p.distortion - target) < 1e-12) {
      best = p;
      break;
    }
  }
  // First-order correction along the supporting line of slope -s.
  return std::max(0.0, best.rate + best.lagrange_multiplier *
                                       (best.distortion - target));
}

Matrix normalize_to_unit_max(const Matrix& distortion) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& row : distortion)
    for (double v : row) hi = std::max(hi, v);
  if (!(hi > 0.0)) return distortion;
  Matrix out = distortion;
  for (auto& row : out)
    for (auto& v : row) v /= hi;
  return out;
}

Matrix hamming_matrix(std::size_t n) {
  Matrix m(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
  return m;
}

JointTensor auxiliary_joint(const ChainModel& model, const EncoderStrategy& g,
                            const ConditionalKernel& z_kernel) {
  require_compatible(model, g);
  const auto& s = model.sizes;
  if (z_kernel.inputs() != s.x) {
    throw DimensionError("z_kernel must have one row per channel input symbol");
  }
  const Factor factors[] = {
      source_factor(axis::kW, model.p_w),
      Factor{{axis::kW}, {{axis::kU, s.u}, {axis::kY, s.y}}, model.obs_kernel},
      Factor{{axis::kU}, {{axis::kX, s.x}}, g.kernel},
      Factor{{axis::kX}, {{axis::kZ, z_kernel.outputs()}}, z_kernel},
  };
  return compose(factors);
}

double achievable_rate(const ChainModel& model, const EncoderStrategy& g,
                       const ConditionalKernel& z_kernel) {
  const auto joint = auxiliary_joint(model, g, z_kernel);
  return conditional_mutual_information(joint, {axis::kW, axis::kU},
                                        {axis::kZ}, {axis::kY});
}

Feasibility feasibility_check(const ChainModel& model, const EncoderStrategy& g,
                              const ConditionalKernel& z_kernel,
                              const RateBudget& budget) {
  Feasibility f;
  f.rate = achievable_rate(model, g, z_kernel);
  f.budget = budget.budget;
  f.margin = budget.budget - f.rate;
  f.feasible = f.margin >= -kFeasibilityTolerance;
  return f;
}

Feasibility feasibility_check(const ChainModel& model, const EncoderStrategy& g,
                              const ConditionalKernel& z_kernel) {
  return feasibility_check(model, g, z_kernel, rate_budget(model));
}

Feasibility feasibility_check(const ChainModel& model, const EncoderStrategy& g) {
  return feasibility_check(model, g, model.channel);
}

RateDecomposition rate_decomposition(const ChainModel& model,
                                     const EncoderStrategy& g,
                                     const ConditionalKernel& z_kernel) {
  const auto j = auxiliary_joint(model, g, z_kernel);
  const std::vector<std::string> wu{axis::kW, axis::kU};
  const std::vector<std::string> y{axis::kY};
  const std::vector<std::string> z{axis::kZ};
  RateDecomposition r;
  r.i_wu_zy = mutual_information(j, wu, {axis::kZ, axis::kY});
  r.i_wu_y = mutual_information(j, wu, y);
  r.h_u_given_y = conditional_entropy(j, {axis::kU}, y);
  r.h_w_given_uy = conditional_entropy(j, {axis::kW}, {axis::kU, axis::kY});
  r.h_z_given_y = conditional_entropy(j, z, y);
  r.h_wuz_given_y = conditional_entropy(j, {axis::kW, axis::kU, axis::kZ}, y);
  r.side_info_savings = r.i_wu_y;
  r.achievable_rate = conditional_mutual_information(j, wu, z, y);
  return r;
}

}  // namespace stratcomm
