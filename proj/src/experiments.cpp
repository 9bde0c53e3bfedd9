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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stratcomm/random_models.hpp"
#include "stratcomm/table1.hpp"

namespace stratcomm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SolverOptions options_for(const ExperimentConfig& c, Commitment fallback) {
  SolverOptions o = c.solver;
  o.commitment = c.commitment.value_or(fallback);
  return o;
}

ResultRow row_from(const EquilibriumOutcome& e, std::vector<double> params,
                   std::size_t rank) {
  ResultRow r;
  r.params = std::move(params);
  r.kind = e.kind;
  r.rank = rank;
  r.enc_value = e.enc_value;
  r.dec_value = e.dec_value;
  r.feasibility_margin = e.diagnostics.feasibility_margin;
  r.exact = e.diagnostics.exact;
  r.diagnostics = e.diagnostics.summary();
  r.encoder = e.encoder;
  r.decoder = e.decoder;
  return r;
}

int kind_order(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::kOse: return 0;
    case EquilibriumKind::kRse: return 1;
    case EquilibriumKind::kNe: return 2;
  }
  return 3;
}

void sort_rows(ResultSet& rs) {
  std::stable_sort(rs.rows.begin(), rs.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.params != b.params) return a.params < b.params;
    if (a.kind != b.kind) return kind_order(a.kind) < kind_order(b.kind);
    return a.rank < b.rank;
  });
}

std::string real_text(double v) { return format_real(v); }

}  // namespace

std::string serialize_strategy(const ConditionalKernel& k) {
  std::string out;
  for (std::size_t i = 0; i < k.inputs(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < k.outputs(); ++j) {
      if (j) out += ' ';
      out += format_real(k(i, j));
    }
  }
  return out;
}

ConditionalKernel parse_strategy(std::string_view text) {
  Matrix rows;
  std::stringstream ss{std::string(text)};
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::stringstream rs(row);
    std::vector<double> v;
    double x;
    while (rs >> x) v.push_back(x);
    if (!rs.eof()) throw std::invalid_argument("parse_strategy: bad number in '" + row + "'");
    rows.push_back(std::move(v));
  }
  return ConditionalKernel::from_rows(rows);
}

ResultSet run_table1_sweep(const ExperimentConfig& config) {
  const auto alphas = config.alpha_sweep.value_or(default_alpha_sweep()).values();
  const auto betas = config.beta_sweep.value_or(default_beta_sweep()).values();
  const auto opts = options_for(config, Commitment::kPure);
  ResultSet rs;
  rs.param_names = {"alpha", "beta"};
  for (double a : alphas) {
    for (double b : betas) {
      const auto game = table1_game(a, b);
      try {
        auto ose = solve_ose(game, opts);
        auto rse = solve_rse(game, opts);
        auto ne = solve_ne(game, opts);
        rs.rows.push_back(row_from(ose, {a, b}, 0));
        rs.rows.push_back(row_from(rse, {a, b}, 0));
        if (ne.empty()) {
          rs.failures.push_back("alpha=" + real_text(a) + " beta=" + real_text(b) +
                                ": no Nash equilibrium found");
          continue;
        }
        std::size_t best = 0;
        double worst = ne[0].enc_value;
        for (std::size_t i = 1; i < ne.size(); ++i) {
          if (ne[i].enc_value < ne[best].enc_value) best = i;
          worst = std::max(worst, ne[i].enc_value);
        }
        auto row = row_from(ne[best], {a, b}, 0);
        row.diagnostics += ";ne_count=" + std::to_string(ne.size()) +
                           ";ne_max_enc=" + real_text(worst);
        rs.rows.push_back(std::move(row));
      } catch (const std::exception& e) {
        rs.failures.push_back("alpha=" + real_text(a) + " beta=" + real_text(b) + ": " +
                              e.what());
      }
    }
  }
  sort_rows(rs);
  return rs;
}

ResultSet run_solver(const ExperimentConfig& config, EquilibriumKind kind) {
  const auto opts = options_for(config, Commitment::kMixed);
  ResultSet rs;
  std::vector<EquilibriumOutcome> outcomes;
  if (config.model) {
    switch (kind) {
      case EquilibriumKind::kOse: outcomes.push_back(solve_ose(*config.model, opts)); break;
      case EquilibriumKind::kRse: outcomes.push_back(solve_rse(*config.model, opts)); break;
      case EquilibriumKind::kNe: outcomes = solve_ne(*config.model, opts); break;
    }
  } else if (config.game) {
    rs.param_names = {"alpha", "beta"};
    const auto& g = config.game->game;
    switch (kind) {
      case EquilibriumKind::kOse: outcomes.push_back(solve_ose(g, opts)); break;
      case EquilibriumKind::kRse: outcomes.push_back(solve_rse(g, opts)); break;
      case EquilibriumKind::kNe: outcomes = solve_ne(g, opts); break;
    }
  } else {
    throw ConfigError(ConfigError::Kind::kValidation,
                      "model: a 'model' or 'game' section is required", "model");
  }
  std::vector<double> params;
  if (config.game && !config.model) {
    params = config.game->preset.empty() ? std::vector<double>{kNaN, kNaN}
                                         : std::vector<double>{config.game->alpha,
                                                               config.game->beta};
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    rs.rows.push_back(row_from(outcomes[i], params, i));
  }
  return rs;
}

Table to_table(const ResultSet& results) {
  Table t;
  t.columns = results.param_names;
  for (const char* c : {"kind", "rank", "enc_value", "dec_value", "feasibility_margin",
                        "exact", "diagnostics", "encoder", "decoder"}) {
    t.columns.push_back(c);
  }
  for (const auto& r : results.rows) {
    std::vector<Cell> row;
    for (double p : r.params) row.push_back(std::isnan(p) ? Cell{} : Cell{p});
    row.push_back(std::string(to_string(r.kind)));
    row.push_back(static_cast<std::int64_t>(r.rank));
    row.push_back(r.enc_value);
    row.push_back(r.dec_value);
    row.push_back(r.feasibility_margin ? Cell{*r.feasibility_margin} : Cell{});
    row.push_back(r.exact);
    row.push_back(r.diagnostics);
    row.push_back(serialize_strategy(r.encoder));
    row.push_back(serialize_strategy(r.decoder));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<RdRow> run_rd_comparison(const ExperimentConfig& config) {
  const auto& rd = config.rd;
  const FiniteDistribution source(rd.source);
  std::vector<RdRow> out;
  auto add_curve = [&](const std::string& label, std::optional<double> beta,
                       const Matrix& raw) {
    const auto m = normalize_to_unit_max(raw);
    const auto pts = rate_distortion_curve(source, m, rd.multipliers, config.capacity);
    for (const auto& p : pts) {
      out.push_back({label, beta, p.lagrange_multiplier, p.distortion, p.rate, p.converged});
    }
  };
  for (double b : rd.betas) {
    add_curve("semantic", b, table1_decoder_matrix(b));
  }
  for (const auto& m : rd.matrices) add_curve(m.label, std::nullopt, m.matrix);
  if (rd.include_hamming) add_curve("hamming", std::nullopt, hamming_matrix(rd.source.size()));
  return out;
}

Table to_table(const std::vector<RdRow>& rows) {
  Table t;
  t.columns = {"curve", "beta", "multiplier", "distortion", "rate", "converged"};
  for (const auto& r : rows) {
    t.rows.push_back({r.curve, r.beta ? Cell{*r.beta} : Cell{}, r.multiplier, r.distortion,
                      r.rate, r.converged});
  }
  return t;
}

Table run_capacity(const ExperimentConfig& config) {
  const ConditionalKernel* channel = nullptr;
  if (config.capacity_channel) {
    channel = &*config.capacity_channel;
  } else if (config.model) {
    channel = &config.model->channel;
  } else {
    throw ConfigError(ConfigError::Kind::kValidation,
                      "capacity.channel: a channel is required (capacity.channel or model)",
                      "capacity.channel");
  }
  const auto cap = channel_capacity(*channel, config.capacity);
  Table t;
  t.columns = {"capacity", "lower_bound", "upper_bound", "iterations", "converged",
               "optimal_input", "rate_ratio", "budget"};
  std::string input;
  for (std::size_t i = 0; i < cap.optimal_input.size(); ++i) {
    if (i) input += ' ';
    input += format_real(cap.optimal_input[i]);
  }
  Cell ratio, budget;
  if (config.model && !config.capacity_channel) {
    const auto b = rate_budget(cap.capacity, config.model->rate_ratio);
    ratio = b.rate_ratio;
    budget = b.budget;
  }
  t.rows.push_back({cap.capacity, cap.lower_bound, cap.upper_bound,
                    static_cast<std::int64_t>(cap.iterations), cap.converged, input, ratio,
                    budget});
  return t;
}

AuditRow audit_row(std::size_t instance, const AlphabetSizes& sizes,
                   const OrderingAudit& a) {
  AuditRow r;
  r.instance = instance;
  r.sizes = sizes;
  r.ose = a.ose.enc_value;
  r.rse = a.rse.enc_value;
  r.rse_exact = a.rse.diagnostics.exact;
  r.ne_count = a.ne.size();
  r.min_ne = std::numeric_limits<double>::infinity();
  r.max_ne = -std::numeric_limits<double>::infinity();
  for (const auto& e : a.ne) {
    r.min_ne = std::min(r.min_ne, e.enc_value);
    r.max_ne = std::max(r.max_ne, e.enc_value);
  }
  if (a.ne.empty()) r.min_ne = r.max_ne = kNaN;
  r.rse_at_least_ose = a.rse_at_least_ose;
  r.ose_at_most_every_ne = a.ose_at_most_every_ne;
  r.some_ne_at_least_rse = a.some_ne_at_least_rse;
  return r;
}

namespace {

void tally(AuditSummary& s, AuditRow row) {
  ++s.instances;
  if (!row.error.empty()) {
    ++s.failures;
  } else {
    s.violations_rse_below_ose += !row.rse_at_least_ose;
    s.violations_ose_above_ne += !row.ose_at_most_every_ne;
    s.instances_without_ne_above_rse += !row.some_ne_at_least_rse;
  }
  s.rows.push_back(std::move(row));
}

}  // namespace

AuditSummary run_random_audit(const ExperimentConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const auto opts = options_for(config, Commitment::kMixed);
  AuditSummary s;
  for (std::size_t i = 0; i < config.audit.instances; ++i) {
    const auto model = random_chain_model(rng, config.audit.model);
    try {
      tally(s, audit_row(i, model.sizes, ordering_audit(model, opts)));
    } catch (const std::exception& e) {
      AuditRow r;
      r.instance = i;
      r.sizes = model.sizes;
      r.ose = r.rse = r.min_ne = r.max_ne = kNaN;
      r.error = e.what();
      tally(s, std::move(r));
    }
  }
  return s;
}

AuditSummary run_single_audit(const ExperimentConfig& config) {
  const auto opts = options_for(config, Commitment::kMixed);
  AuditSummary s;
  if (config.model) {
    tally(s, audit_row(0, config.model->sizes, ordering_audit(*config.model, opts)));
  } else if (config.game) {
    const auto& g = config.game->game;
    AlphabetSizes sizes;
    sizes.x = g.rows();
    sizes.what = g.cols();
    tally(s, audit_row(0, sizes, ordering_audit(g, opts)));
  } else {
    throw ConfigError(ConfigError::Kind::kValidation,
                      "audit: needs an 'audit' section with a seed, a 'model' or a 'game'",
                      "audit");
  }
  return s;
}

Table to_table(const AuditSummary& summary) {
  Table t;
  t.columns = {"instance", "W", "U", "Y", "X", "Xhat", "What", "ose", "rse", "rse_exact",
               "ne_count", "min_ne", "max_ne", "rse_at_least_ose", "ose_at_most_every_ne",
               "some_ne_at_least_rse", "error"};
  auto real = [](double v) { return std::isnan(v) ? Cell{} : Cell{v}; };
  for (const auto& r : summary.rows) {
    const auto& s = r.sizes;
    t.rows.push_back({static_cast<std::int64_t>(r.instance), static_cast<std::int64_t>(s.w),
                      static_cast<std::int64_t>(s.u), static_cast<std::int64_t>(s.y),
                      static_cast<std::int64_t>(s.x), static_cast<std::int64_t>(s.xhat),
                      static_cast<std::int64_t>(s.what), real(r.ose), real(r.rse), r.rse_exact,
                      static_cast<std::int64_t>(r.ne_count), real(r.min_ne), real(r.max_ne),
                      r.rse_at_least_ose, r.ose_at_most_every_ne, r.some_ne_at_least_rse,
                      r.error});
  }
  return t;
}

Metadata summary_metadata(const AuditSummary& s) {
  return {{"instances", std::to_string(s.instances)},
          {"failures", std::to_string(s.failures)},
          {"violations_rse_below_ose", std::to_string(s.violations_rse_below_ose)},
          {"violations_ose_above_ne", std::to_string(s.violations_ose_above_ne)},
          {"instances_without_ne_above_rse", std::to_string(s.instances_without_ne_above_rse)}};
}

Table to_table(const scalar::CounterexampleAudit& a) {
  Table t;
  t.columns = {"rse_value", "rse_grid_value", "g_star", "max_ne_value", "min_ne_value",
               "separation", "resolution"};
  t.rows.push_back({a.rse_value, a.rse_grid_value, a.g_star, a.max_ne_value, a.min_ne_value,
                    a.separation, a.resolution});
  return t;
}

}  // namespace stratcomm
