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

#ifndef STRATCOMM_MODEL_HPP_
#define STRATCOMM_MODEL_HPP_

// The communication chain as data:
//
//   W --obs--> (U, Y),  U --g--> X --channel--> Xhat,  (Y, Xhat) --h--> What
//
// W is the semantic source, U the encoder's indirect observation, Y the
// decoder's side information. Both parties score the outcome with their own
// per-letter distortion over (w, u, y, what).

#include <cstddef>
#include <string>
#include <vector>

#include "stratcomm/prob_core.hpp"

namespace stratcomm {

namespace axis {
inline const std::string kW = "W";
inline const std::string kU = "U";
inline const std::string kY = "Y";
inline const std::string kX = "X";
inline const std::string kXhat = "Xhat";
inline const std::string kWhat = "What";
inline const std::string kZ = "Z";
}  // namespace axis

struct AlphabetSizes {
  std::size_t w = 0;
  std::size_t u = 0;
  std::size_t y = 0;
  std::size_t x = 0;
  std::size_t xhat = 0;
  std::size_t what = 0;

  // Decoder contexts are (y, xhat) pairs, indexed y * xhat + xhat_index.
  std::size_t contexts() const { return y * xhat; }
  bool operator==(const AlphabetSizes&) const = default;
};

// Per-letter distortion over (w, u, y, what), row-major in that order.
class DistortionTensor {
 public:
  DistortionTensor() = default;
  DistortionTensor(std::size_t w, std::size_t u, std::size_t y,
                   std::size_t what, std::vector<double> values);

  // A (w, what) matrix broadcast across every (u, y).
  static DistortionTensor from_matrix(
      const std::vector<std::vector<double>>& matrix, std::size_t u,
      std::size_t y);

  double operator()(std::size_t w, std::size_t u, std::size_t y,
                    std::size_t what) const {
    return values_[((w * u_ + u) * y_ + y) * what_ + what];
  }
  std::size_t w() const { return w_; }
  std::size_t u() const { return u_; }
  std::size_t y() const { return y_; }
  std::size_t what() const { return what_; }
  std::span<const double> values() const { return values_; }

  bool depends_only_on_w_what() const;

 private:
  std::size_t w_ = 0, u_ = 0, y_ = 0, what_ = 0;
  std::vector<double> values_;
};

struct DistortionSpec {
  DistortionTensor encoder;
  DistortionTensor decoder;
  // Set when both tensors are constant across (u, y).
  bool reduced = false;
};

struct EncoderStrategy {
  ConditionalKernel kernel;  // U -> X
};

struct DecoderStrategy {
  ConditionalKernel kernel;  // (Y, Xhat) -> What, row index y * |Xhat| + xhat
};

struct ChainModel {
  FiniteDistribution p_w;
  ConditionalKernel obs_kernel;  // W -> (U, Y), column index u * |Y| + y
  ConditionalKernel channel;     // X -> Xhat
  DistortionSpec distortion;
  double rate_ratio = 1.0;  // k / m
  AlphabetSizes sizes;
};

enum class Party { kEncoder, kDecoder };

struct Violation {
  std::string field;
  std::string check;
};

std::vector<Violation> validate_model(const ChainModel& model);

// Throws ValidationError listing every violation.
void require_valid(const ChainModel& model);
void require_compatible(const ChainModel& model, const EncoderStrategy& g);
void require_compatible(const ChainModel& model, const DecoderStrategy& h);

// Joint over (W, U, Y, X, Xhat, What).
JointTensor chain_joint(const ChainModel& model, const EncoderStrategy& g,
                        const DecoderStrategy& h);

// Joint over (W, U, Y) only; independent of both strategies.
JointTensor observation_joint(const ChainModel& model);

double expected_distortion(const ChainModel& model, const EncoderStrategy& g,
                           const DecoderStrategy& h, Party which);

// Bilinear form of the expected distortions:
//
//   D(g, h) = sum_{u,x,c,what} g(x|u) h(what|c) coeff[u, x, c, what]
//
// with coeff = P(xhat|x) * sum_w P(w) P(u,y|w) d(w,u,y,what) and c = (y, xhat).
// `context_mass[u, x, c]` is the matching weight P(xhat|x) * P(u, y).
struct BilinearDistortion {
  AlphabetSizes sizes;
  std::vector<double> encoder;       // [u][x][c][what]
  std::vector<double> decoder;       // [u][x][c][what]
  std::vector<double> context_mass;  // [u][x][c]

  std::size_t index(std::size_t u, std::size_t x, std::size_t c,
                    std::size_t what) const {
    return ((u * sizes.x + x) * sizes.contexts() + c) * sizes.what + what;
  }
  std::size_t mass_index(std::size_t u, std::size_t x, std::size_t c) const {
    return (u * sizes.x + x) * sizes.contexts() + c;
  }
  const std::vector<double>& of(Party p) const {
    return p == Party::kEncoder ? encoder : decoder;
  }
};

BilinearDistortion bilinear_form(const ChainModel& model);

double evaluate(const BilinearDistortion& form, const ConditionalKernel& g,
                const ConditionalKernel& h, Party which);

// Unnormalized per-context costs sum_{u,x} g(x|u) coeff[u,x,c,what], laid out
// [c][what], plus the context probabilities.
struct ContextCosts {
  std::vector<double> encoder;
  std::vector<double> decoder;
  std::vector<double> probability;
};

ContextCosts context_costs(const BilinearDistortion& form,
                           const ConditionalKernel& g);

}  // namespace stratcomm

#endif  // STRATCOMM_MODEL_HPP_
