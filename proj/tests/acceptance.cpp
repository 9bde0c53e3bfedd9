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

// Acceptance checks, one line per criterion. Usage:
//   acceptance <path to the stratcomm executable> <source dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "stratcomm/experiments.hpp"
#include "stratcomm/table1.hpp"

using namespace stratcomm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_real(v); }

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --- 1 -------------------------------------------------------------------
Outcome counterexample(const std::string& exe) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run("'" + exe + "' counterexample --format json");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.code != 0) return {false, "exit code " + std::to_string(r.code)};
  const auto row = nlohmann::json::parse(r.out)["rows"][0];
  const double rse = row["rse_value"], grid = row["rse_grid_value"];
  const double max_ne = row["max_ne_value"], sep = row["separation"];
  const bool pass = rse == 1.0 && std::abs(grid - 1.0) <= 1e-6 && max_ne <= 1e-12 &&
                    sep >= 1.0 - 1e-12 && secs < 1.0;
  return {pass, "rse=" + fmt(rse) + " grid=" + fmt(grid) + " max_ne=" + fmt(max_ne) +
                    " separation=" + fmt(sep) + " time=" + fmt(secs) + "s"};
}

// --- 2, 3 ----------------------------------------------------------------
struct AuditRun {
  AuditSummary summary;
  double seconds = 0.0;
};

AuditRun audit_corpus(const fs::path& src) {
  const auto config = load_config(src / "configs" / "audit_seed7.json");
  const auto start = std::chrono::steady_clock::now();
  AuditRun a{run_random_audit(config, *config.seed), 0.0};
  a.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return a;
}

Outcome ordering_rse_ose(const AuditRun& a) {
  const auto& s = a.summary;
  std::size_t max_alphabet = 0;
  for (const auto& r : s.rows) {
    for (auto n : {r.sizes.w, r.sizes.u, r.sizes.y, r.sizes.x, r.sizes.xhat, r.sizes.what})
      max_alphabet = std::max(max_alphabet, n);
  }
  const bool pass = s.instances == 500 && s.failures == 0 && max_alphabet <= 3 &&
                    s.violations_rse_below_ose == 0 && a.seconds < 300.0;
  return {pass, "instances=" + std::to_string(s.instances) + " failures=" +
                    std::to_string(s.failures) + " violations=" +
                    std::to_string(s.violations_rse_below_ose) + " time=" + fmt(a.seconds) + "s"};
}

Outcome ordering_ose_ne(const AuditRun& a) {
  const auto& s = a.summary;
  std::size_t ne = 0;
  for (const auto& r : s.rows) ne += r.ne_count;
  const bool pass = s.instances == 500 && s.failures == 0 && s.violations_ose_above_ne == 0 &&
                    ne >= s.instances && a.seconds < 600.0;
  return {pass, "instances=" + std::to_string(s.instances) + " equilibria=" + std::to_string(ne) +
                    " violations=" + std::to_string(s.violations_ose_above_ne) +
                    " time=" + fmt(a.seconds) + "s"};
}

// --- 4 -------------------------------------------------------------------
Outcome solver_vs_oracle() {
  Rng rng(4);
  int ok = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < 50; ++t) {
    RandomModelOptions opt;
    opt.form = t % 2 ? DistortionForm::kFull : DistortionForm::kReduced;
    opt.range = t % 3 == 2 ? DistortionRange::kSigned : DistortionRange::kUnit;
    const auto m = random_chain_model(rng, AlphabetSizes{2, 2, 2, 2, 2, 2}, opt);
    const auto grid = oracle::grid_stackelberg(m, 50);
    const auto ose = solve_ose(m), rse = solve_rse(m);
    const double ose_bound = *ose.diagnostics.error_bound + 1e-9;
    const double rse_bound = *rse.diagnostics.error_bound + 1e-9;
    const double dose = std::abs(ose.enc_value - grid.ose);
    const double drse = std::abs(rse.enc_value - grid.rse);
    worst_ratio = std::max({worst_ratio, dose / ose_bound, drse / rse_bound});
    if (dose <= ose_bound && drse <= rse_bound) ++ok;
  }
  return {ok == 50, std::to_string(ok) + "/50 within bound, worst |diff|/bound=" + fmt(worst_ratio)};
}

// --- 5 -------------------------------------------------------------------
Outcome capacity() {
  const auto bsc = channel_capacity(ConditionalKernel(2, 2, {0.9, 0.1, 0.1, 0.9}));
  const double expect = 1.0 - oracle::h2(0.1);
  const auto id = channel_capacity(ConditionalKernel::identity(3));
  const double e1 = std::abs(bsc.capacity - expect), e2 = std::abs(id.capacity - std::log2(3.0));
  return {e1 <= 1e-6 && e2 <= 1e-9,
          "bsc=" + fmt(bsc.capacity) + " err=" + fmt(e1) + " identity3 err=" + fmt(e2)};
}

// --- 6 -------------------------------------------------------------------
Outcome rate_distortion(const fs::path& src) {
  const double r = rate_at_distortion(FiniteDistribution::uniform(2), hamming_matrix(2), 0.1);
  const double err = std::abs(r - (1.0 - oracle::h2(0.1)));
  const auto rows = run_rd_comparison(load_config(src / "configs" / "rdcurve.json"));
  std::map<std::string, std::vector<RdRow>> curves;
  for (const auto& row : rows) curves[row.curve + (row.beta ? format_real(*row.beta) : "")].push_back(row);
  double worst = 0.0;  // largest violation of monotonicity or convexity
  for (auto& [name, pts] : curves) {
    std::sort(pts.begin(), pts.end(),
              [](const RdRow& a, const RdRow& b) { return a.distortion < b.distortion; });
    for (std::size_t i = 1; i < pts.size(); ++i) worst = std::max(worst, pts[i].rate - pts[i - 1].rate);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          const double span = pts[k].distortion - pts[i].distortion;
          if (span <= 1e-12) continue;
          const double t = (pts[j].distortion - pts[i].distortion) / span;
          worst = std::max(worst, pts[j].rate - ((1 - t) * pts[i].rate + t * pts[k].rate));
        }
  }
  return {err <= 1e-4 && worst <= 1e-6,
          "R(0.1)=" + fmt(r) + " err=" + fmt(err) + " curves=" + std::to_string(curves.size()) +
              " worst violation=" + fmt(worst)};
}

// --- 7 -------------------------------------------------------------------
Outcome identities() {
  Rng rng(7);
  double chain_err = 0.0, semantic_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto m = random_chain_model(rng);
    const auto g = random_kernel(rng, m.sizes.u, m.sizes.x);
    const auto z = random_kernel(rng, m.sizes.x, 2 + t % 2);
    const auto d = rate_decomposition(m, {g}, z);
    chain_err = std::max(chain_err, std::abs(d.achievable_rate - d.chain_rule_form()));
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t nw = 2 + t % 3, nu = 2 + (t / 3) % 3;
    const JointTensor j({{"W", nw}, {"U", nu}}, random_simplex_point(rng, nw * nu));
    const double lhs = entropy(j, {"U"});
    const double rhs = entropy(j, {"W"}) + conditional_entropy(j, {"U"}, {"W"}) -
                       conditional_entropy(j, {"W"}, {"U"});
    semantic_err = std::max(semantic_err, std::abs(lhs - rhs));
  }
  return {chain_err <= 1e-12 && semantic_err <= 1e-12,
          "chain-rule max err=" + fmt(chain_err) + " semantic-entropy max err=" + fmt(semantic_err)};
}

// --- 8 -------------------------------------------------------------------
Outcome table1(const fs::path& src) {
  // Entries as printed, (encoder, decoder) per (g_i, h_j) at alpha = beta = 1.
  const double printed[3][3][2] = {{{0, 0}, {1, 2.2}, {7, 8}},
                                   {{1, 1}, {0, 1.2}, {6, 7}},
                                   {{7, 7}, {6, 7.2}, {0, 1}}};
  const auto game = load_config(src / "configs" / "table1.json").game->game;
  bool match = game.rows() == 3 && game.cols() == 3;
  for (std::size_t i = 0; match && i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      match = match && std::abs(game.enc_distortion[i][j] - printed[i][j][0]) <= 1e-12 &&
              std::abs(game.dec_distortion[i][j] - printed[i][j][1]) <= 1e-12;
    }
  const auto start = std::chrono::steady_clock::now();
  const auto rs = run_table1_sweep(parse_config(R"({"schema_version": 1})"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::map<std::vector<double>, std::map<EquilibriumKind, double>> pts;
  for (const auto& r : rs.rows) pts[r.params][r.kind] = r.enc_value;
  std::size_t separating = 0;
  for (auto& [p, v] : pts) {
    if (v.count(EquilibriumKind::kNe) == 0) continue;
    if (v[EquilibriumKind::kRse] > v[EquilibriumKind::kOse] + 1e-9 &&
        v[EquilibriumKind::kRse] > v[EquilibriumKind::kNe] + 1e-9) {
      ++separating;
    }
  }
  return {match && separating >= 1 && secs < 60.0,
          std::string("table ") + (match ? "matches" : "differs") + ", grid points=" +
              std::to_string(pts.size()) + " separating=" + std::to_string(separating) +
              " time=" + fmt(secs) + "s"};
}

// --- 9 -------------------------------------------------------------------
Outcome feasibility() {
  Rng rng(9);
  std::size_t zero_ok = 0, zero_total = 0, mono_ok = 0;
  const auto dead = ConditionalKernel::constant(2, std::vector<double>{0.5, 0.5});
  for (int t = 0; t < 100; ++t) {
    auto m = random_chain_model(rng, AlphabetSizes{2, 2, 2, 2, 2, 2});
    m.channel = dead;
    const auto g = t % 4 == 0 ? ConditionalKernel::constant(2, random_simplex_point(rng, 2))
                              : random_kernel(rng, 2, 2);
    for (const auto& z : {m.channel, ConditionalKernel::identity(2)}) {
      const auto f = feasibility_check(m, {g}, z);
      ++zero_total;
      if (f.feasible == (f.rate <= kFeasibilityTolerance)) ++zero_ok;
    }
  }
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_chain_model(rng);
    const auto g = random_kernel(rng, m.sizes.u, m.sizes.x);
    const double cap = channel_capacity(m.channel).capacity;
    const double ratio = u(rng), smaller = ratio * u(rng) / 2.0;
    const auto big = feasibility_check(m, {g}, m.channel, rate_budget(cap, ratio));
    const auto small = feasibility_check(m, {g}, m.channel, rate_budget(cap, smaller));
    if ((!small.feasible || big.feasible) && small.margin <= big.margin) ++mono_ok;
  }
  return {zero_ok == zero_total && mono_ok == 100,
          "zero-capacity " + std::to_string(zero_ok) + "/" + std::to_string(zero_total) +
              ", budget monotonicity " + std::to_string(mono_ok) + "/100"};
}

// --- 10 ------------------------------------------------------------------
Outcome determinism(const std::string& exe, const fs::path& src) {
  const auto cfg = src / "configs";
  const std::vector<std::string> commands = {
      "capacity --config '" + (cfg / "capacity_bsc.json").string() + "'",
      "rdcurve --config '" + (cfg / "rdcurve.json").string() + "'",
      "ose --config '" + (cfg / "chain_binary.json").string() + "'",
      "rse --config '" + (cfg / "chain_binary.json").string() + "' --format json",
      "ne --config '" + (cfg / "chain_binary.json").string() + "'",
      "audit-theorem2 --config '" + (src / "tests" / "audit_small.json").string() + "' --seed 42",
      "counterexample",
      "table1 --config '" + (cfg / "table1.json").string() + "'",
  };
  const auto dir = fs::temp_directory_path() / "stratcomm_acceptance";
  fs::create_directories(dir);
  std::size_t same = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outs[2];
    for (int k = 0; k < 2; ++k) {
      const auto path = dir / ("run" + std::to_string(i) + "_" + std::to_string(k));
      const auto r = run("'" + exe + "' " + commands[i] + " --out '" + path.string() + "'");
      outs[k] = r.code == 0 ? slurp(path) : "failed:" + std::to_string(k);
    }
    if (outs[0] == outs[1] && !outs[0].empty()) ++same;
  }
  fs::remove_all(dir);
  return {same == commands.size(),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " subcommands byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <stratcomm executable> <source dir>\n";
    return 64;
  }
  const std::string exe = argv[1];
  const fs::path src = argv[2];

  std::optional<AuditRun> corpus;
  auto audit = [&]() -> const AuditRun& {
    if (!corpus) corpus = audit_corpus(src);
    return *corpus;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"counterexample exactness", [&] { return counterexample(exe); }},
      {"ordering RSE >= OSE on 500 instances", [&] { return ordering_rse_ose(audit()); }},
      {"ordering OSE <= every NE on 500 instances", [&] { return ordering_ose_ne(audit()); }},
      {"solvers match brute-force oracle on 50 binary instances", solver_vs_oracle},
      {"capacity closed forms", capacity},
      {"rate-distortion closed form and curve shape", [&] { return rate_distortion(src); }},
      {"information identities on 100 random joints", identities},
      {"three-word table and sweep separation", [&] { return table1(src); }},
      {"feasibility behavior", feasibility},
      {"determinism of every subcommand", [&] { return determinism(exe, src); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s [%s] (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
