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

#ifndef STRATCOMM_EXPERIMENTS_HPP_
#define STRATCOMM_EXPERIMENTS_HPP_

// Experiment drivers behind the command-line tool. Each returns plain rows;
// to_table() turns them into the fixed-header tables that emit() writes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stratcomm/config.hpp"
#include "stratcomm/emit.hpp"
#include "stratcomm/equilibria.hpp"
#include "stratcomm/info_limits.hpp"
#include "stratcomm/scalar_game.hpp"

namespace stratcomm {

// Strategy kernels as text: rows separated by ';', entries by ' ', each with
// 12 significant digits.
std::string serialize_strategy(const ConditionalKernel& k);
ConditionalKernel parse_strategy(std::string_view text);

struct ResultRow {
  std::vector<double> params;  // values for ResultSet::param_names
  EquilibriumKind kind = EquilibriumKind::kOse;
  std::size_t rank = 0;  // position among the equilibria of one point
  double enc_value = 0.0;
  double dec_value = 0.0;
  std::optional<double> feasibility_margin;
  bool exact = true;
  std::string diagnostics;
  ConditionalKernel encoder;
  ConditionalKernel decoder;
};

struct ResultSet {
  std::vector<std::string> param_names;
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;  // one message per skipped point
};

// Three-word game over the (alpha, beta) grid: per point one OSE row, one RSE
// row and one NE row (the NE with the lowest encoder distortion; the
// diagnostics carry the NE count and the highest NE encoder distortion).
ResultSet run_table1_sweep(const ExperimentConfig& config);

// One solution concept on the configured chain model, or on the configured
// game when no model is given. NE yields one row per equilibrium.
ResultSet run_solver(const ExperimentConfig& config, EquilibriumKind kind);

Table to_table(const ResultSet& results);

struct RdRow {
  std::string curve;
  std::optional<double> beta;
  double multiplier = 0.0;
  double distortion = 0.0;
  double rate = 0.0;
  bool converged = true;
};

inline constexpr std::string_view kRdNormalization =
    "each distortion matrix divided by its largest entry";

// Semantic curves (three-word decoder matrix per beta, plus explicit
// matrices) and the Hamming baseline, all normalized to unit maximum.
std::vector<RdRow> run_rd_comparison(const ExperimentConfig& config);
Table to_table(const std::vector<RdRow>& rows);

// Capacity of the configured channel (capacity.channel, else model.channel)
// and the resulting rate budget when a model is present.
Table run_capacity(const ExperimentConfig& config);

struct AuditRow {
  std::size_t instance = 0;
  AlphabetSizes sizes;
  double ose = 0.0;
  double rse = 0.0;
  bool rse_exact = false;
  std::size_t ne_count = 0;
  double min_ne = 0.0;
  double max_ne = 0.0;
  bool rse_at_least_ose = true;
  bool ose_at_most_every_ne = true;
  bool some_ne_at_least_rse = true;
  std::string error;  // nonempty when the instance failed
};

struct AuditSummary {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t violations_rse_below_ose = 0;
  std::size_t violations_ose_above_ne = 0;
  std::size_t instances_without_ne_above_rse = 0;  // informational, not a violation
  std::vector<AuditRow> rows;
};

// Random corpus of `config.audit.instances` chain models drawn from `seed`.
AuditSummary run_random_audit(const ExperimentConfig& config, std::uint64_t seed);
// The configured model (or game) as a one-instance audit.
AuditSummary run_single_audit(const ExperimentConfig& config);
AuditRow audit_row(std::size_t instance, const AlphabetSizes& sizes,
                   const OrderingAudit& audit);
Table to_table(const AuditSummary& summary);
Metadata summary_metadata(const AuditSummary& summary);

Table to_table(const scalar::CounterexampleAudit& audit);

}  // namespace stratcomm

#endif  // STRATCOMM_EXPERIMENTS_HPP_
