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

#include "stratcomm/scalar_game.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace stratcomm::scalar;

TEST_CASE("payoff") {
  CHECK(payoff({1.0, 1.0}) == 0.0);
  CHECK(payoff({0.0, -1.0}) == 1.0);
  CHECK(payoff({1.0, 0.5}) == -0.25);
  CHECK_THROWS_AS(payoff({1.5, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(payoff({0.0, -1.01}), std::out_of_range);
  CHECK_THROWS_AS(payoff({std::nan(""), 0.0}), std::out_of_range);
}

TEST_CASE("inner maximum") {
  CHECK(inner_max(0.5) == 1.5);
  CHECK(inner_argmax(0.5) == -1.0);
  CHECK(inner_max(-0.5) == 1.5);
  CHECK(inner_argmax(-0.5) == 1.0);
  // Against a fine grid over h.
  const double res = 1e-3;
  for (int k = -20; k <= 20; ++k) {
    const double g = k / 20.0;
    double best = -1e9;
    for (int i = 0; i <= 2000; ++i) best = std::max(best, payoff({g, -1.0 + i * res}));
    CHECK(std::abs(best - inner_max(g)) <= res * res);
  }
}

TEST_CASE("encoder best response") {
  const auto pos = encoder_best_response(0.3), neg = encoder_best_response(-0.7);
  CHECK(pos.lo == 1.0);
  CHECK(pos.hi == 1.0);
  CHECK(neg.lo == -1.0);
  CHECK(neg.hi == -1.0);
  const auto zero = encoder_best_response(0.0);
  CHECK(zero.lo == -1.0);
  CHECK(zero.hi == 1.0);
  // Grid check of the argmin over g.
  for (double h : {-0.9, -0.2, 0.4, 1.0}) {
    double best = 1e9, arg = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double g = -1.0 + i * 0.01;
      if (payoff({g, h}) < best - 1e-15) {
        best = payoff({g, h});
        arg = g;
      }
    }
    CHECK(arg == encoder_best_response(h).lo);
  }
  for (int i = 0; i <= 20; ++i) CHECK(payoff({-1.0 + i * 0.1, 0.0}) == 0.0);
}

TEST_CASE("Nash values") {
  for (double res : {1e-1, 1e-2, 1e-3}) {
    const auto b = ne_value_bound(res);
    CHECK(b.max_ne_value <= 1e-12);
    CHECK(b.min_ne_value >= -0.25 - 1e-12);
    CHECK(b.profiles > 0);
    for (const auto& w : b.witnesses) CHECK(payoff(w) == b.max_ne_value);
  }
  // h = 1/2 lies on the grid at these resolutions.
  CHECK(ne_value_bound(1e-2).min_ne_value == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(payoff({1.0, 0.5}) == -0.25);
}

TEST_CASE("robust value") {
  for (double res : {1e-2, 1e-3}) {
    const auto r = rse_value(res);
    CHECK(r.value == 1.0);
    CHECK(r.g_star == 0.0);
    CHECK(std::abs(r.grid_value - 1.0) <= res * res);
    CHECK(std::abs(r.grid_g_star) <= res);
  }
}

TEST_CASE("counterexample audit") {
  const auto a = audit_counterexample();
  CHECK(a.rse_value == 1.0);
  CHECK(std::abs(a.rse_grid_value - 1.0) <= 1e-6);
  CHECK(a.max_ne_value <= 1e-12);
  CHECK(a.separation >= 1.0 - 1e-12);
  CHECK(a.separation == a.rse_value - a.max_ne_value);
}
