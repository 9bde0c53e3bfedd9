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

#include "stratcomm/prob_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace stratcomm {
namespace {

std::string check_masses(std::span<const double> probs) {
  if (probs.empty()) return "empty distribution";
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i])) {
      return "entry " + std::to_string(i) + " is not finite";
    }
    if (probs[i] < 0.0) {
      std::ostringstream os;
      os << "entry " << i << " is negative (" << probs[i] << ")";
      return os.str();
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > tol::kMass) {
    std::ostringstream os;
    os.precision(17);
    os << "entries sum to " << sum << ", not 1";
    return os.str();
  }
  return {};
}

std::size_t product_of_sizes(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size;
  return n;
}

std::vector<std::size_t> strides_of(const std::vector<Axis>& axes) {
  std::vector<std::size_t> strides(axes.size(), 1);
  for (std::size_t k = axes.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * axes[k].size;
  }
  return strides;
}

void require_disjoint(const std::vector<std::string>& a,
                      const std::vector<std::string>& b, const char* what) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw std::invalid_argument(std::string(what) + ": axis '" + x +
                                  "' appears in more than one set");
    }
  }
}

std::vector<std::string> concat(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

FiniteDistribution FiniteDistribution::uniform(std::size_t n) {
  return FiniteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteDistribution FiniteDistribution::point_mass(std::size_t n,
                                                  std::size_t at) {
  std::vector<double> p(n, 0.0);
  p.at(at) = 1.0;
  return FiniteDistribution(std::move(p));
}

std::string FiniteDistribution::check() const { return check_masses(probs_); }

ConditionalKernel::ConditionalKernel(std::size_t inputs, std::size_t outputs,
                                     std::vector<double> values)
    : inputs_(inputs), outputs_(outputs), values_(std::move(values)) {
  if (values_.size() != inputs_ * outputs_) {
    throw DimensionError("kernel: expected " + std::to_string(inputs_) + "x" +
                         std::to_string(outputs_) + " entries, got " +
                         std::to_string(values_.size()));
  }
}

ConditionalKernel ConditionalKernel::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DimensionError("kernel: no rows");
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DimensionError("kernel: row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(cols));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return ConditionalKernel(rows.size(), cols, std::move(values));
}

ConditionalKernel ConditionalKernel::identity(std::size_t n) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  return ConditionalKernel(n, n, std::move(v));
}

ConditionalKernel ConditionalKernel::constant(std::size_t inputs,
                                              std::span<const double> row) {
  std::vector<double> v;
  v.reserve(inputs * row.size());
  for (std::size_t i = 0; i < inputs; ++i) v.insert(v.end(), row.begin(), row.end());
  return ConditionalKernel(inputs, row.size(), std::move(v));
}

ConditionalKernel ConditionalKernel::deterministic(
    std::span<const std::size_t> choice, std::size_t outputs) {
  std::vector<double> v(choice.size() * outputs, 0.0);
  for (std::size_t i = 0; i < choice.size(); ++i) {
    if (choice[i] >= outputs) {
      throw DimensionError("kernel: deterministic choice out of range");
    }
    v[i * outputs + choice[i]] = 1.0;
  }
  return ConditionalKernel(choice.size(), outputs, std::move(v));
}

std::string ConditionalKernel::check() const {
  if (inputs_ == 0 || outputs_ == 0) return "empty kernel";
  for (std::size_t i = 0; i < inputs_; ++i) {
    auto msg = check_masses(row(i));
    if (!msg.empty()) return "row " + std::to_string(i) + ": " + msg;
  }
  return {};
}

std::optional<std::vector<std::size_t>> ConditionalKernel::as_deterministic()
    const {
  std::vector<std::size_t> out(inputs_);
  for (std::size_t i = 0; i < inputs_; ++i) {
    auto r = row(i);
    auto it = std::find(r.begin(), r.end(), 1.0);
    if (it == r.end()) return std::nullopt;
    out[i] = static_cast<std::size_t>(it - r.begin());
  }
  return out;
}

ConditionalKernel mix(const ConditionalKernel& a, const ConditionalKernel& b,
                      double lambda) {
  if (a.inputs() != b.inputs() || a.outputs() != b.outputs()) {
    throw DimensionError("mix: kernel shapes differ");
  }
  std::vector<double> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = lambda * a.values()[i] + (1.0 - lambda) * b.values()[i];
  }
  return ConditionalKernel(a.inputs(), a.outputs(), std::move(v));
}

JointTensor::JointTensor(std::vector<Axis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].size == 0) {
      throw DimensionError("joint: axis '" + axes_[i].name + "' is empty");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (axes_[j].name == axes_[i].name) {
        throw DimensionError("joint: duplicate axis '" + axes_[i].name + "'");
      }
    }
  }
  if (values_.size() != product_of_sizes(axes_)) {
    throw DimensionError("joint: value count does not match axis sizes");
  }
}

double JointTensor::total_mass() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

bool JointTensor::has_axis(std::string_view name) const {
  return std::any_of(axes_.begin(), axes_.end(),
                     [&](const Axis& a) { return a.name == name; });
}

std::size_t JointTensor::axis_position(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return i;
  }
  throw DimensionError("joint: unknown axis '" + std::string(name) + "'");
}

std::size_t JointTensor::axis_size(std::string_view name) const {
  return axes_[axis_position(name)].size;
}

double JointTensor::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) {
    throw DimensionError("joint: index arity mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (index[k] >= axes_[k].size) throw DimensionError("joint: index out of range");
    flat = flat * axes_[k].size + index[k];
  }
  return values_[flat];
}

Factor source_factor(std::string name, const FiniteDistribution& dist) {
  std::vector<double> row(dist.probs().begin(), dist.probs().end());
  const std::size_t n = row.size();
  return Factor{{}, {Axis{std::move(name), n}},
                ConditionalKernel(1, n, std::move(row))};
}

JointTensor compose(std::span<const Factor> factors, std::size_t max_cells) {
  std::vector<Axis> axes;
  std::vector<double> values{1.0};

  for (std::size_t f = 0; f < factors.size(); ++f) {
    const Factor& factor = factors[f];
    const std::string where = "compose: factor " + std::to_string(f);

    std::vector<std::size_t> given_pos;
    std::size_t given_card = 1;
    for (const auto& g : factor.given) {
      auto it = std::find_if(axes.begin(), axes.end(),
                             [&](const Axis& a) { return a.name == g; });
      if (it == axes.end()) {
        throw DimensionError(where + ": conditioning axis '" + g +
                             "' has not been produced yet");
      }
      given_pos.push_back(static_cast<std::size_t>(it - axes.begin()));
      given_card *= it->size;
    }
    std::size_t out_card = 1;
    for (const auto& p : factor.produces) {
      if (p.size == 0) throw DimensionError(where + ": empty axis '" + p.name + "'");
      if (std::any_of(axes.begin(), axes.end(),
                      [&](const Axis& a) { return a.name == p.name; })) {
        throw DimensionError(where + ": axis '" + p.name + "' produced twice");
      }
      out_card *= p.size;
    }
    if (factor.kernel.inputs() != given_card ||
        factor.kernel.outputs() != out_card) {
      throw DimensionError(where + ": kernel is " +
                           std::to_string(factor.kernel.inputs()) + "x" +
                           std::to_string(factor.kernel.outputs()) +
                           ", axes require " + std::to_string(given_card) +
                           "x" + std::to_string(out_card));
    }
    if (auto msg = factor.kernel.check(); !msg.empty()) {
      throw ValidationError(where + ": " + msg);
    }
    if (values.size() * out_card > max_cells) {
      throw CapExceededError(where + ": joint would exceed " +
                             std::to_string(max_cells) + " cells");
    }

    const auto strides = strides_of(axes);
    std::vector<double> next(values.size() * out_card, 0.0);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      const double mass = values[idx];
      if (mass == 0.0) continue;
      std::size_t row = 0;
      for (std::size_t k = 0; k < given_pos.size(); ++k) {
        const std::size_t p = given_pos[k];
        row = row * axes[p].size + (idx / strides[p]) % axes[p].size;
      }
      auto kr = factor.kernel.row(row);
      for (std::size_t o = 0; o < out_card; ++o) {
        next[idx * out_card + o] = mass * kr[o];
      }
    }
    axes.insert(axes.end(), factor.produces.begin(), factor.produces.end());
    values = std::move(next);
  }

  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (total > 0.0 && total != 1.0) {
    for (auto& v : values) v /= total;
  }
  return JointTensor(std::move(axes), std::move(values));
}

JointTensor marginalize(const JointTensor& joint,
                        const std::vector<std::string>& keep) {
  std::vector<bool> kept(joint.axes().size(), false);
  for (const auto& name : keep) kept[joint.axis_position(name)] = true;

  std::vector<Axis> out_axes;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (kept[k]) out_axes.push_back(joint.axes()[k]);
  }
  if (out_axes.size() == joint.axes().size()) return joint;

  const auto& axes = joint.axes();
  const auto strides = strides_of(axes);
  std::vector<double> out(product_of_sizes(out_axes), 0.0);
  auto vals = joint.values();
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      if (!kept[k]) continue;
      o = o * axes[k].size + (idx / strides[k]) % axes[k].size;
    }
    out[o] += vals[idx];
  }
  return JointTensor(std::move(out_axes), std::move(out));
}

FiniteDistribution marginal(const JointTensor& joint, std::string_view axis) {
  auto m = marginalize(joint, {std::string(axis)});
  return FiniteDistribution(
      std::vector<double>(m.values().begin(), m.values().end()));
}

double entropy(std::span<const double> masses) {
  // Sorted accumulation makes the result independent of symbol order.
  std::vector<double> p(masses.begin(), masses.end());
  std::sort(p.begin(), p.end());
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double entropy(const FiniteDistribution& dist) { return entropy(dist.probs()); }

double entropy(const JointTensor& joint, const std::vector<std::string>& axes) {
  if (axes.empty()) return 0.0;
  return entropy(marginalize(joint, axes).values());
}

double conditional_entropy(const JointTensor& joint,
                           const std::vector<std::string>& target,
                           const std::vector<std::string>& given) {
  require_disjoint(target, given, "conditional_entropy");
  return entropy(joint, concat(target, given)) - entropy(joint, given);
}

double mutual_information(const JointTensor& joint,
                          const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  require_disjoint(a, b, "mutual_information");
  return entropy(joint, a) + entropy(joint, b) - entropy(joint, concat(a, b));
}

double conditional_mutual_information(const JointTensor& joint,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c) {
  require_disjoint(a, b, "conditional_mutual_information");
  require_disjoint(a, c, "conditional_mutual_information");
  require_disjoint(b, c, "conditional_mutual_information");
  const auto ac = concat(a, c);
  const auto bc = concat(b, c);
  return entropy(joint, ac) + entropy(joint, bc) -
         entropy(joint, concat(ac, b)) - entropy(joint, c);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("kl_divergence: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

double binary_entropy(double p) {
  const double pp[2] = {p, 1.0 - p};
  return entropy(std::span<const double>(pp, 2));
}

}  // namespace stratcomm
