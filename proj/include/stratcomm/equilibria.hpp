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

#ifndef STRATCOMM_EQUILIBRIA_HPP_
#define STRATCOMM_EQUILIBRIA_HPP_

// Decoder best responses and the three solution concepts:
//
//   OSE:  min_g min_{h in H(g)} D_E(g, h)   (ties broken for the encoder)
//   RSE:  min_g max_{h in H(g)} D_E(g, h)   (ties broken against it)
//   NE:   mutual best responses, no commitment
//
// where H(g) is the set of decoder strategies minimizing D_D(g, .). Every
// solver works either on a ChainModel (behavior strategies g: U -> X,
// h: (Y, Xhat) -> What) or on a ReducedGame (a bimatrix over deterministic
// strategies, mixed strategies as 1-row kernels).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stratcomm/info_limits.hpp"
#include "stratcomm/model.hpp"

namespace stratcomm {

enum class EquilibriumKind { kOse, kRse, kNe };
const char* to_string(EquilibriumKind kind);

// Which encoder strategies a Stackelberg leader may commit to.
enum class Commitment { kMixed, kPure };
const char* to_string(Commitment c);

struct SolverOptions {
  double tie_tolerance = 1e-9;
  double grid_resolution = 1.0 / 50.0;
  std::size_t max_grid_points = 50'000;
  // Decoder selection patterns |What|^(|Y||Xhat|) searched by the
  // Stackelberg solvers.
  std::size_t max_patterns = 1'000'000;
  // rows * cols of a reduced bimatrix.
  std::size_t max_reduced_cells = 2'000'000;
  // Full support enumeration up to this many strategies per player.
  std::size_t support_cap = 8;
  std::size_t max_equilibria = 1'000;
  // Exact tie-set enumeration for mixed-commitment RSE on bimatrices.
  std::size_t max_tie_set_columns = 12;
  Commitment commitment = Commitment::kMixed;
  bool enforce_rate_constraint = false;
  IterationOptions capacity;
  // Auxiliary test channel for the rate constraint; the physical channel
  // when unset.
  std::optional<ConditionalKernel> z_kernel;
};

struct ReducedGame {
  Matrix enc_distortion;  // [encoder strategy][decoder strategy]
  Matrix dec_distortion;
  std::vector<std::string> enc_labels;
  std::vector<std::string> dec_labels;
  // Deterministic maps behind each row / column when reduced from a chain.
  std::vector<std::vector<std::size_t>> enc_maps;
  std::vector<std::vector<std::size_t>> dec_maps;
  std::vector<std::string> excluded_encoders;

  std::size_t rows() const { return enc_distortion.size(); }
  std::size_t cols() const {
    return enc_distortion.empty() ? 0 : enc_distortion.front().size();
  }
};

void validate_game(const ReducedGame& game);

struct ContextResponse {
  std::size_t context = 0;
  std::size_t y = 0;
  std::size_t xhat = 0;
  double probability = 0.0;
  std::vector<std::size_t> members;
  double min_value = 0.0;  // conditional expected decoder distortion
};

struct BestResponseSet {
  std::vector<ContextResponse> per_context;  // positive-probability contexts
  std::vector<std::size_t> zero_prob_contexts;

  // True when h only uses best responses on positive-probability contexts.
  bool contains(const DecoderStrategy& h, double tolerance = 1e-12) const;
};

BestResponseSet decoder_best_responses(const ChainModel& model,
                                       const EncoderStrategy& g,
                                       const SolverOptions& options = {});

struct Diagnostics {
  std::vector<std::size_t> tie_contexts;
  std::optional<double> feasibility_margin;
  std::optional<double> resolution;
  std::optional<double> error_bound;  // grid error bound at `resolution`
  std::optional<double> lower_bound;
  std::optional<double> infimum;
  std::optional<bool> attained;
  std::size_t candidates = 0;
  bool exact = true;
  bool mixed_improved = false;
  bool degenerate = false;
  std::vector<std::string> notes;

  std::string summary() const;
};

struct EquilibriumOutcome {
  EquilibriumKind kind = EquilibriumKind::kOse;
  ConditionalKernel encoder;  // chain: |U| x |X|; game: 1 x rows
  ConditionalKernel decoder;  // chain: contexts x |What|; game: 1 x cols
  double enc_value = 0.0;
  double dec_value = 0.0;
  Diagnostics diagnostics;
};

// Encoder distortion of g under the best (optimistic) or worst (pessimistic)
// element of H(g), together with that element.
struct CommittedValue {
  double enc_value = 0.0;
  ConditionalKernel decoder;
  std::vector<std::size_t> tie_contexts;
};
CommittedValue optimistic_value(const BilinearDistortion& form,
                                const ConditionalKernel& g,
                                double tie_tolerance);
CommittedValue pessimistic_value(const BilinearDistortion& form,
                                 const ConditionalKernel& g,
                                 double tie_tolerance);

// Game analogues; `row_mix` is a distribution over rows.
std::vector<std::size_t> best_response_columns(const ReducedGame& game,
                                               std::span<const double> row_mix,
                                               double tie_tolerance);
double game_value(const Matrix& m, std::span<const double> row_mix,
                  std::span<const double> col_mix);

EquilibriumOutcome solve_ose(const ChainModel& model,
                             const SolverOptions& options = {});
EquilibriumOutcome solve_ose(const ReducedGame& game,
                             const SolverOptions& options = {});
EquilibriumOutcome solve_rse(const ChainModel& model,
                             const SolverOptions& options = {});
EquilibriumOutcome solve_rse(const ReducedGame& game,
                             const SolverOptions& options = {});

std::vector<EquilibriumOutcome> solve_ne(const ReducedGame& game,
                                         const SolverOptions& options = {});
// Reduces to the bimatrix, solves it and maps every profile back to
// behavior strategies.
std::vector<EquilibriumOutcome> solve_ne(const ChainModel& model,
                                         const SolverOptions& options = {});

ReducedGame reduce_to_bimatrix(const ChainModel& model, bool feasible_only,
                               const SolverOptions& options = {});

// Mixture over deterministic strategies to the equivalent behavior strategy.
EncoderStrategy behavior_encoder(const ReducedGame& game,
                                 std::span<const double> row_mix,
                                 std::size_t x_size);
DecoderStrategy behavior_decoder(const ReducedGame& game,
                                 std::span<const double> col_mix,
                                 std::size_t what_size);

inline constexpr double kOrderingTolerance = 1e-9;

struct OrderingAudit {
  EquilibriumOutcome ose;
  EquilibriumOutcome rse;
  std::vector<EquilibriumOutcome> ne;
  bool rse_at_least_ose = false;
  bool some_ne_at_least_rse = false;
  bool ose_at_most_every_ne = false;
};

OrderingAudit ordering_audit(const ChainModel& model,
                             const SolverOptions& options = {});
OrderingAudit ordering_audit(const ReducedGame& game,
                             const SolverOptions& options = {});

}  // namespace stratcomm

#endif  // STRATCOMM_EQUILIBRIA_HPP_
