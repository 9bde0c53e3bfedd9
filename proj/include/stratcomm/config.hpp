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

#ifndef STRATCOMM_CONFIG_HPP_
#define STRATCOMM_CONFIG_HPP_

// Experiment configuration: a JSON document with a `schema_version` field.
// docs/config_schema.md describes every key. Unknown keys are rejected so
// that typos surface as errors instead of silently applied defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stratcomm/emit.hpp"
#include "stratcomm/equilibria.hpp"
#include "stratcomm/random_models.hpp"

namespace stratcomm {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { kIo, kParse, kValidation };

  ConfigError(Kind kind, std::string message, std::string field = {},
              std::optional<std::size_t> line = std::nullopt,
              std::optional<std::size_t> column = std::nullopt);

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }
  std::optional<std::size_t> line() const { return line_; }
  std::optional<std::size_t> column() const { return column_; }

 private:
  Kind kind_;
  std::string field_;
  std::optional<std::size_t> line_, column_;
};

const char* to_string(ConfigError::Kind kind);

// Inclusive arithmetic grid start, start + step, ..., <= stop.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  // Each value rounded to 12 significant digits so that e.g. 12 * 0.1 lands
  // on the literal 1.2.
  std::vector<double> values() const;
};

struct GameConfig {
  std::string preset;  // "table1" or empty for explicit matrices
  double alpha = 1.0;
  double beta = 1.0;
  ReducedGame game;    // built from the preset at (alpha, beta) or given
};

struct RdCurveSpec {
  std::string label;
  Matrix matrix;
};

struct RdConfig {
  std::vector<double> source;
  std::vector<double> betas;            // three-word decoder matrix per beta
  std::vector<RdCurveSpec> matrices;    // extra explicit matrices
  std::vector<double> multipliers;
  bool include_hamming = true;
};

struct AuditConfig {
  std::size_t instances = 500;
  RandomModelOptions model;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::optional<std::uint64_t> seed;
  std::optional<ChainModel> model;
  std::optional<GameConfig> game;
  SolverOptions solver;
  // Unset means the command's own default: pure for `table1`, mixed
  // elsewhere. `solver.commitment` holds the mixed fallback.
  std::optional<Commitment> commitment;
  std::optional<Range> alpha_sweep;
  std::optional<Range> beta_sweep;
  IterationOptions capacity;
  std::optional<ConditionalKernel> capacity_channel;
  RdConfig rd;
  AuditConfig audit;
  double counterexample_resolution = 1e-3;
  std::optional<std::string> output_path;
  OutputFormat output_format = OutputFormat::kCsv;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Sweep defaults used by `table1` when the config gives none.
Range default_alpha_sweep();
Range default_beta_sweep();
std::vector<double> default_rd_multipliers();
std::vector<double> default_rd_betas();

// The effective configuration with every default filled in; parsing it
// yields the same configuration.
nlohmann::ordered_json resolved_json(const ExperimentConfig& config);

}  // namespace stratcomm

#endif  // STRATCOMM_CONFIG_HPP_
