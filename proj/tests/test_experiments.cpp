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

#include "stratcomm/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "stratcomm/table1.hpp"

using namespace stratcomm;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(STRATCOMM_SOURCE_DIR) / "configs";

ExperimentConfig sweep_config(double a0, double a1, double b0, double b1, double step) {
  auto c = parse_config(R"({"schema_version": 1})");
  c.alpha_sweep = Range{a0, a1, step};
  c.beta_sweep = Range{b0, b1, step};
  return c;
}

// Recompute both distortions of a game row from its serialized strategies.
void reverify_game_row(const ReducedGame& game, const std::vector<Cell>& row, std::size_t first) {
  const auto enc = std::get<double>(row[first + 2]);
  const auto dec = std::get<double>(row[first + 3]);
  const auto x = parse_strategy(std::get<std::string>(row[first + 7]));
  const auto y = parse_strategy(std::get<std::string>(row[first + 8]));
  CHECK(std::abs(game_value(game.enc_distortion, x.values(), y.values()) - enc) <= 1e-9);
  CHECK(std::abs(game_value(game.dec_distortion, x.values(), y.values()) - dec) <= 1e-9);
}

}  // namespace

TEST_CASE("strategy text round trip") {
  const ConditionalKernel k(2, 3, {0.5, 0.25, 0.25, 1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto text = serialize_strategy(k);
  CHECK(text == "0.5 0.25 0.25;0.333333333333 0.333333333333 0.333333333333");
  const auto back = parse_strategy(text);
  REQUIRE(back.inputs() == 2);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(back.values()[i] - k.values()[i]) <= 1e-12);
  CHECK_THROWS(parse_strategy("0.5 x"));
}

TEST_CASE("three-word sweep") {
  const auto config = sweep_config(-1, 1, 1, 1.4, 0.1);
  const auto rs = run_table1_sweep(config);
  const std::size_t points = 21 * 5;
  CHECK(rs.failures.empty());
  CHECK(rs.rows.size() + rs.failures.size() == 3 * points);

  std::map<std::pair<double, double>, std::map<EquilibriumKind, double>> by_point;
  for (const auto& r : rs.rows) by_point[{r.params[0], r.params[1]}][r.kind] = r.enc_value;
  CHECK(by_point.size() == points);
  CHECK(by_point[{1.0, 1.0}][EquilibriumKind::kOse] == 0.0);

  std::size_t separating = 0;
  for (auto& [pt, v] : by_point) {
    CHECK(v[EquilibriumKind::kRse] >= v[EquilibriumKind::kOse] - 1e-9);
    if (v[EquilibriumKind::kRse] > v[EquilibriumKind::kOse] + 1e-9 &&
        v[EquilibriumKind::kRse] > v[EquilibriumKind::kNe] + 1e-9) {
      ++separating;
      CHECK(pt.second == 1.2);
      CHECK(pt.first < 0.0);
    }
  }
  CHECK(separating > 0);

  // Rows come out sorted by (alpha, beta) then kind.
  for (std::size_t i = 1; i < rs.rows.size(); ++i) {
    const auto& a = rs.rows[i - 1];
    const auto& b = rs.rows[i];
    CHECK(std::tie(a.params, a.kind) <= std::tie(b.params, b.kind));
  }

  // Every emitted row is reproducible from its own strategies.
  const auto table = to_table(rs);
  for (const auto& row : table.rows) {
    const auto game = table1_game(std::get<double>(row[0]), std::get<double>(row[1]));
    reverify_game_row(game, row, 2);
  }
}

TEST_CASE("solver rows re-verify on the bundled chain model") {
  const auto config = load_config(kConfigs / "chain_binary.json");
  for (auto kind : {EquilibriumKind::kOse, EquilibriumKind::kRse, EquilibriumKind::kNe}) {
    const auto rs = run_solver(config, kind);
    REQUIRE_FALSE(rs.rows.empty());
    CHECK(rs.param_names.empty());
    const auto table = to_table(rs);
    for (const auto& row : table.rows) {
      const auto g = parse_strategy(std::get<std::string>(row[7]));
      const auto h = parse_strategy(std::get<std::string>(row[8]));
      CHECK(std::abs(expected_distortion(*config.model, {g}, {h}, Party::kEncoder) -
                     std::get<double>(row[2])) <= 1e-9);
      CHECK(std::abs(expected_distortion(*config.model, {g}, {h}, Party::kDecoder) -
                     std::get<double>(row[3])) <= 1e-9);
    }
  }
}

TEST_CASE("solver rows on the three-word game") {
  const auto config = load_config(kConfigs / "table1.json");
  const auto rs = run_solver(config, EquilibriumKind::kNe);
  CHECK(rs.param_names == std::vector<std::string>{"alpha", "beta"});
  const auto table = to_table(rs);
  for (const auto& row : table.rows) reverify_game_row(config.game->game, row, 2);
  CHECK_THROWS_AS(run_solver(parse_config(R"({"schema_version": 1})"), EquilibriumKind::kOse),
                  ConfigError);
}

TEST_CASE("rate-distortion comparison") {
  const auto config = load_config(kConfigs / "rdcurve.json");
  const auto rows = run_rd_comparison(config);
  std::map<std::string, std::vector<RdRow>> curves;
  for (const auto& r : rows) {
    curves[r.curve + (r.beta ? "@" + format_real(*r.beta) : "")].push_back(r);
  }
  CHECK(curves.size() == 5);
  for (auto& [name, pts] : curves) {
    CAPTURE(name);
    CHECK(pts.size() == default_rd_multipliers().size());
    std::sort(pts.begin(), pts.end(),
              [](const RdRow& a, const RdRow& b) { return a.distortion < b.distortion; });
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].rate <= pts[i - 1].rate + 1e-6);
    for (const auto& p : pts) CHECK(p.converged);
  }
  // The Hamming baseline at its smallest distortion approaches log2 3.
  const auto& ham = curves["hamming"];
  CHECK(ham.front().distortion <= 1e-12);
  CHECK(std::abs(ham.front().rate - std::log2(3.0)) <= 1e-6);
  const auto table = to_table(rows);
  CHECK(table.columns.front() == "curve");
  CHECK(table.rows.size() == rows.size());
}

TEST_CASE("capacity table") {
  const auto t = run_capacity(load_config(kConfigs / "capacity_bsc.json"));
  REQUIRE(t.rows.size() == 1);
  const double h = -0.1 * std::log2(0.1) - 0.9 * std::log2(0.9);
  CHECK(std::abs(std::get<double>(t.rows[0][0]) - (1 - h)) <= 1e-9);
}

TEST_CASE("random audit") {
  auto config = parse_config(R"({"schema_version": 1, "audit": {"instances": 25}})");
  const auto a = run_random_audit(config, 7);
  const auto b = run_random_audit(config, 7);
  CHECK(a.instances == 25);
  CHECK(a.failures == 0);
  CHECK(a.violations_rse_below_ose == 0);
  CHECK(a.violations_ose_above_ne == 0);
  CHECK(render_csv(to_table(a), summary_metadata(a)) == render_csv(to_table(b), summary_metadata(b)));
  const auto c = run_random_audit(config, 8);
  CHECK(render_csv(to_table(a), {}) != render_csv(to_table(c), {}));
}

TEST_CASE("single-instance audit and counterexample table") {
  const auto s = run_single_audit(load_config(kConfigs / "table1.json"));
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0].rse_at_least_ose);
  const auto t = to_table(scalar::audit_counterexample(1e-3));
  REQUIRE(t.rows.size() == 1);
  CHECK(std::get<double>(t.rows[0][0]) == 1.0);
  CHECK(std::get<double>(t.rows[0][5]) >= 1.0 - 1e-12);
}
