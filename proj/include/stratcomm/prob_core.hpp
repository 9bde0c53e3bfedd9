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

#ifndef STRATCOMM_PROB_CORE_HPP_
#define STRATCOMM_PROB_CORE_HPP_

// Finite-alphabet probability arithmetic: distributions, row-stochastic
// kernels, dense joint tensors with named axes, and the entropy / mutual
// information functionals built on them. All logarithms are base 2.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stratcomm {

namespace tol {
inline constexpr double kMass = 1e-12;
inline constexpr double kNonneg = 1e-12;
}  // namespace tol

// Largest dense joint we are willing to materialize.
inline constexpr std::size_t kDefaultMaxJointCells = 10'000'000;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  explicit FiniteDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  static FiniteDistribution uniform(std::size_t n);
  static FiniteDistribution point_mass(std::size_t n, std::size_t at);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Empty string when valid, otherwise a description of the first failure.
  std::string check() const;
  bool valid() const { return check().empty(); }

 private:
  std::vector<double> probs_;
};

// Row-stochastic map from an input alphabet to distributions over an output
// alphabet, stored row-major.
class ConditionalKernel {
 public:
  ConditionalKernel() = default;
  ConditionalKernel(std::size_t inputs, std::size_t outputs,
                    std::vector<double> values);

  static ConditionalKernel from_rows(
      const std::vector<std::vector<double>>& rows);
  static ConditionalKernel identity(std::size_t n);
  // Every row equal to `row`.
  static ConditionalKernel constant(std::size_t inputs,
                                    std::span<const double> row);
  // Deterministic map: row i is a point mass on choice[i].
  static ConditionalKernel deterministic(std::span<const std::size_t> choice,
                                         std::size_t outputs);

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }
  double operator()(std::size_t in, std::size_t out) const {
    return values_[in * outputs_ + out];
  }
  double& operator()(std::size_t in, std::size_t out) {
    return values_[in * outputs_ + out];
  }
  std::span<const double> row(std::size_t in) const {
    return std::span<const double>(values_).subspan(in * outputs_, outputs_);
  }
  std::span<const double> values() const { return values_; }

  std::string check() const;
  bool valid() const { return check().empty(); }

  // Index of the single output with mass 1 in every row, if deterministic.
  std::optional<std::vector<std::size_t>> as_deterministic() const;

 private:
  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
  std::vector<double> values_;
};

// Pointwise convex combination lambda * a + (1 - lambda) * b.
ConditionalKernel mix(const ConditionalKernel& a, const ConditionalKernel& b,
                      double lambda);

struct Axis {
  std::string name;
  std::size_t size = 0;
};

// Dense joint distribution over an ordered list of named axes. The last axis
// varies fastest.
class JointTensor {
 public:
  JointTensor() = default;
  JointTensor(std::vector<Axis> axes, std::vector<double> values);

  const std::vector<Axis>& axes() const { return axes_; }
  std::span<const double> values() const { return values_; }
  std::size_t cells() const { return values_.size(); }
  double total_mass() const;

  bool has_axis(std::string_view name) const;
  std::size_t axis_position(std::string_view name) const;
  std::size_t axis_size(std::string_view name) const;

  // Mass at a full index tuple given in axis order.
  double at(std::span<const std::size_t> index) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
};

// One factor of a Markov factorization: a kernel from the already-produced
// `given` axes (flattened row-major in the listed order) to the new
// `produces` axes (flattened the same way). A distribution is a factor with
// no `given` axes and a single-row kernel.
struct Factor {
  std::vector<std::string> given;
  std::vector<Axis> produces;
  ConditionalKernel kernel;
};

Factor source_factor(std::string name, const FiniteDistribution& dist);

JointTensor compose(std::span<const Factor> factors,
                    std::size_t max_cells = kDefaultMaxJointCells);

// Sums out every axis not in `keep`; the result keeps the original axis order.
JointTensor marginalize(const JointTensor& joint,
                        const std::vector<std::string>& keep);

// Distribution of a single axis.
FiniteDistribution marginal(const JointTensor& joint, std::string_view axis);

double entropy(const FiniteDistribution& dist);
double entropy(std::span<const double> masses);
// Joint entropy of a subset of axes; empty set gives 0.
double entropy(const JointTensor& joint, const std::vector<std::string>& axes);

double conditional_entropy(const JointTensor& joint,
                           const std::vector<std::string>& target,
                           const std::vector<std::string>& given);

double mutual_information(const JointTensor& joint,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

double conditional_mutual_information(const JointTensor& joint,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c);

// D(p || q) in bits; +infinity when p puts mass where q does not.
double kl_divergence(std::span<const double> p, std::span<const double> q);

double binary_entropy(double p);

}  // namespace stratcomm

#endif  // STRATCOMM_PROB_CORE_HPP_
