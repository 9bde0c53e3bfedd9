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

#ifndef STRATCOMM_SCALAR_GAME_HPP_
#define STRATCOMM_SCALAR_GAME_HPP_

// Continuous two-player game on [-1, 1]^2 with encoder distortion
// D_E(g, h) = h (h - g) and a constant decoder distortion. Every h is a
// decoder best response, so a committed encoder faces the worst h:
// max_h h (h - g) = 1 + |g|, minimized to 1 at g = 0, while every pure
// Nash profile has D_E <= 0.

#include <cstddef>
#include <vector>

namespace stratcomm::scalar {

inline constexpr double kLow = -1.0;
inline constexpr double kHigh = 1.0;

struct ScalarProfile {
  double g = 0.0;
  double h = 0.0;
};

// Throws std::out_of_range when g or h leaves [-1, 1].
double payoff(const ScalarProfile& p);
inline constexpr double kDecoderDistortion = 0.0;

// Encoder best responses to h as a closed interval: {1} for h > 0, {-1}
// for h < 0, all of [-1, 1] at h = 0.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval encoder_best_response(double h);

// max_h h (h - g) = 1 + |g|, attained at h = -sign(g) (either end at g = 0).
double inner_max(double g);
double inner_argmax(double g);

struct NeBound {
  double max_ne_value = 0.0;
  double min_ne_value = 0.0;
  std::vector<ScalarProfile> witnesses;  // profiles attaining the maximum
  std::size_t profiles = 0;              // NE profiles enumerated
};
// Enumerates Nash profiles (h on the grid, g its best response; every grid g
// at h = 0).
NeBound ne_value_bound(double resolution);

struct RseValue {
  double value = 1.0;  // analytic
  double g_star = 0.0;
  double grid_value = 0.0;  // min over grid g of max over grid h
  double grid_g_star = 0.0;
};
RseValue rse_value(double resolution);

struct CounterexampleAudit {
  double rse_value = 0.0;
  double rse_grid_value = 0.0;
  double g_star = 0.0;
  double max_ne_value = 0.0;
  double min_ne_value = 0.0;
  double separation = 0.0;
  double resolution = 0.0;
};
CounterexampleAudit audit_counterexample(double resolution = 1e-3);

}  // namespace stratcomm::scalar

#endif  // STRATCOMM_SCALAR_GAME_HPP_
