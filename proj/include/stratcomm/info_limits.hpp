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

#ifndef STRATCOMM_INFO_LIMITS_HPP_
#define STRATCOMM_INFO_LIMITS_HPP_

#include <cstddef>
#include <vector>

#include "stratcomm/model.hpp"
#include "stratcomm/prob_core.hpp"

namespace stratcomm {

struct IterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10'000;
};

struct CapacityResult {
  double capacity = 0.0;  // equals lower_bound, achieved by optimal_input
  FiniteDistribution optimal_input;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  // Mutual information of each iterate, in order.
  std::vector<double> history;
};

// Blahut-Arimoto. Stops once max_x D(W(.|x) || q) - I(p; W) <= tolerance.
CapacityResult channel_capacity(const ConditionalKernel& channel,
                                const IterationOptions& options = {});

struct RateBudget {
  double capacity = 0.0;
  double rate_ratio = 1.0;
  double budget = 0.0;
};

RateBudget rate_budget(const ChainModel& model,
                       const IterationOptions& options = {});
RateBudget rate_budget(double capacity, double rate_ratio);

struct RDPoint {
  double distortion = 0.0;
  double rate = 0.0;  // bits
  // Slope parameter: the point sits where dR/dD = -lagrange_multiplier.
  double lagrange_multiplier = 0.0;
  bool converged = true;
};

using Matrix = std::vector<std::vector<double>>;

// One point per multiplier, in input order. Multiplier 0 is the zero-rate
// point with the smallest distortion reachable without information.
std::vector<RDPoint> rate_distortion_curve(const FiniteDistribution& source,
                                           const Matrix& distortion,
                                           const std::vector<double>& multipliers,
                                           const IterationOptions& options = {});

RDPoint rate_distortion_point(const FiniteDistribution& source,
                              const Matrix& distortion, double multiplier,
                              const IterationOptions& options = {});

// R(D) at a target distortion by bisection on the multiplier. Returns
// +infinity below the minimum achievable distortion and 0 above the
// zero-rate distortion.
double rate_at_distortion(const FiniteDistribution& source,
                          const Matrix& distortion, double target,
                          const IterationOptions& options = {});

double min_distortion(const FiniteDistribution& source, const Matrix& distortion);
double zero_rate_distortion(const FiniteDistribution& source,
                            const Matrix& distortion);

// Rescaled so the largest entry is 1 (unchanged if the largest entry is <= 0).
Matrix normalize_to_unit_max(const Matrix& distortion);
Matrix hamming_matrix(std::size_t n);

// Joint over (W, U, Y, X, Z) with Z drawn from X through z_kernel.
JointTensor auxiliary_joint(const ChainModel& model, const EncoderStrategy& g,
                            const ConditionalKernel& z_kernel);

// I(W,U; Z | Y) in bits.
double achievable_rate(const ChainModel& model, const EncoderStrategy& g,
                       const ConditionalKernel& z_kernel);

struct Feasibility {
  bool feasible = false;
  double margin = 0.0;  // budget - achievable rate
  double rate = 0.0;
  double budget = 0.0;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

Feasibility feasibility_check(const ChainModel& model, const EncoderStrategy& g,
                              const ConditionalKernel& z_kernel,
                              const RateBudget& budget);
Feasibility feasibility_check(const ChainModel& model, const EncoderStrategy& g,
                              const ConditionalKernel& z_kernel);
// Z = Xhat through the physical channel.
Feasibility feasibility_check(const ChainModel& model, const EncoderStrategy& g);

struct RateDecomposition {
  double i_wu_zy = 0.0;        // I(W,U; Z,Y)
  double i_wu_y = 0.0;         // I(W,U; Y)
  double h_u_given_y = 0.0;    // H(U|Y)
  double h_w_given_uy = 0.0;   // H(W|U,Y)
  double h_z_given_y = 0.0;    // H(Z|Y)
  double h_wuz_given_y = 0.0;  // H(W,U,Z|Y)
  double side_info_savings = 0.0;  // I(W,U; Y)
  double achievable_rate = 0.0;    // I(W,U; Z|Y), computed directly

  double chain_rule_form() const { return i_wu_zy - i_wu_y; }
  double entropy_form() const {
    return h_u_given_y + h_w_given_uy + h_z_given_y - h_wuz_given_y;
  }
};

RateDecomposition rate_decomposition(const ChainModel& model,
                                     const EncoderStrategy& g,
                                     const ConditionalKernel& z_kernel);

}  // namespace stratcomm

#endif  // STRATCOMM_INFO_LIMITS_HPP_
