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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stratcomm::scalar {
namespace {

void check_range(double v, const char* name) {
  if (!(v >= kLow && v <= kHigh)) {
    throw std::out_of_range(std::string(name) + " = " + std::to_string(v) +
                            " is outside [-1, 1]");
  }
}

void check_resolution(double resolution) {
  if (!(resolution > 0.0) || resolution > 2.0) {
    throw std::invalid_argument("resolution must lie in (0, 2]");
  }
}

// Grid over [-1, 1] that always contains both ends and 0 when 1/resolution
// is an integer.
std::vector<double> grid(double resolution) {
  const auto n = static_cast<std::size_t>(std::ceil(2.0 / resolution - 1e-9));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out[i] = kLow + (kHigh - kLow) * static_cast<double>(i) / static_cast<double>(n);
  }
  // Snap the midpoint so h = 0 is represented exactly.
  if (n % 2 == 0) out[n / 2] = 0.0;
  return out;
}

}  // namespace

double payoff(const ScalarProfile& p) {
  check_range(p.g, "g");
  check_range(p.h, "h");
  return p.h * (p.h - p.g);
}

Interval encoder_best_response(double h) {
  check_range(h, "h");
  if (h > 0.0) return {kHigh, kHigh};
  if (h < 0.0) return {kLow, kLow};
  return {kLow, kHigh};
}

double inner_max(double g) {
  check_range(g, "g");
  return 1.0 + std::abs(g);
}

double inner_argmax(double g) {
  check_range(g, "g");
  return g > 0.0 ? kLow : kHigh;
}

NeBound ne_value_bound(double resolution) {
  check_resolution(resolution);
  const auto pts = grid(resolution);
  NeBound out;
  out.max_ne_value = -std::numeric_limits<double>::infinity();
  out.min_ne_value = std::numeric_limits<double>::infinity();
  auto visit = [&](ScalarProfile p) {
    const double v = payoff(p);
    ++out.profiles;
    out.min_ne_value = std::min(out.min_ne_value, v);
    if (v > out.max_ne_value) {
      out.max_ne_value = v;
      out.witnesses.clear();
    }
    if (v == out.max_ne_value) out.witnesses.push_back(p);
  };
  for (double h : pts) {
    const auto br = encoder_best_response(h);
    if (br.lo == br.hi) {
      visit({br.lo, h});
    } else {
      for (double g : pts) visit({g, h});
    }
  }
  return out;
}

RseValue rse_value(double resolution) {
  check_resolution(resolution);
  const auto pts = grid(resolution);
  RseValue out;
  out.value = inner_max(0.0);
  out.g_star = 0.0;
  out.grid_value = std::numeric_limits<double>::infinity();
  for (double g : pts) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double h : pts) worst = std::max(worst, h * (h - g));
    if (worst < out.grid_value) {
      out.grid_value = worst;
      out.grid_g_star = g;
    }
  }
  return out;
}

CounterexampleAudit audit_counterexample(double resolution) {
  const auto rse = rse_value(resolution);
  const auto ne = ne_value_bound(resolution);
  CounterexampleAudit a;
  a.rse_value = rse.value;
  a.rse_grid_value = rse.grid_value;
  a.g_star = rse.g_star;
  a.max_ne_value = ne.max_ne_value;
  a.min_ne_value = ne.min_ne_value;
  a.separation = rse.value - ne.max_ne_value;
  a.resolution = resolution;
  return a;
}

}  // namespace stratcomm::scalar
