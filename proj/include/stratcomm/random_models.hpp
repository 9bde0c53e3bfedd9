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

#ifndef STRATCOMM_RANDOM_MODELS_HPP_
#define STRATCOMM_RANDOM_MODELS_HPP_

// Seeded generators for random finite instances. Kernel rows are uniform on
// the simplex (normalized exponential samples).

#include <cstddef>
#include <random>

#include "stratcomm/equilibria.hpp"
#include "stratcomm/model.hpp"

namespace stratcomm {

using Rng = std::mt19937_64;

enum class DistortionRange { kUnit, kSigned };  // [0, 1] or [-1, 1]
enum class DistortionForm { kReduced, kFull };  // (w, what) matrix or full tensor

struct RandomModelOptions {
  std::size_t min_alphabet = 2;
  std::size_t max_alphabet = 3;
  DistortionRange range = DistortionRange::kUnit;
  DistortionForm form = DistortionForm::kReduced;
  double rate_ratio = 1.0;
};

std::vector<double> random_simplex_point(Rng& rng, std::size_t n);
FiniteDistribution random_distribution(Rng& rng, std::size_t n);
ConditionalKernel random_kernel(Rng& rng, std::size_t inputs, std::size_t outputs);
ChainModel random_chain_model(Rng& rng, const RandomModelOptions& options = {});
// Alphabet sizes fixed by the caller.
ChainModel random_chain_model(Rng& rng, const AlphabetSizes& sizes,
                              const RandomModelOptions& options = {});
ReducedGame random_game(Rng& rng, std::size_t rows, std::size_t cols,
                        DistortionRange range = DistortionRange::kUnit);

}  // namespace stratcomm

#endif  // STRATCOMM_RANDOM_MODELS_HPP_
