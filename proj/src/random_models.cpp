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

#include "stratcomm/random_models.hpp"

#include <stdexcept>

namespace stratcomm {
namespace {

double draw_distortion(Rng& rng, DistortionRange range) {
  std::uniform_real_distribution<double> d(range == DistortionRange::kUnit ? 0.0 : -1.0, 1.0);
  return d(rng);
}

DistortionTensor random_tensor(Rng& rng, const AlphabetSizes& s,
                               const RandomModelOptions& options) {
  if (options.form == DistortionForm::kReduced) {
    std::vector<std::vector<double>> m(s.w, std::vector<double>(s.what));
    for (auto& row : m)
      for (auto& v : row) v = draw_distortion(rng, options.range);
    return DistortionTensor::from_matrix(m, s.u, s.y);
  }
  std::vector<double> v(s.w * s.u * s.y * s.what);
  for (auto& e : v) e = draw_distortion(rng, options.range);
  return DistortionTensor(s.w, s.u, s.y, s.what, std::move(v));
}

}  // namespace

std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& v : p) {
    v = e(rng);
    s += v;
  }
  for (auto& v : p) v /= s;
  return p;
}

FiniteDistribution random_distribution(Rng& rng, std::size_t n) {
  return FiniteDistribution(random_simplex_point(rng, n));
}

ConditionalKernel random_kernel(Rng& rng, std::size_t inputs, std::size_t outputs) {
  std::vector<double> v;
  v.reserve(inputs * outputs);
  for (std::size_t i = 0; i < inputs; ++i) {
    auto row = random_simplex_point(rng, outputs);
    v.insert(v.end(), row.begin(), row.end());
  }
  return ConditionalKernel(inputs, outputs, std::move(v));
}

ChainModel random_chain_model(Rng& rng, const RandomModelOptions& options) {
  if (options.min_alphabet < 1 || options.max_alphabet < options.min_alphabet) {
    throw std::invalid_argument("random_chain_model: bad alphabet range");
  }
  std::uniform_int_distribution<std::size_t> size(options.min_alphabet,
                                                  options.max_alphabet);
  AlphabetSizes s;
  s.w = size(rng);
  s.u = size(rng);
  s.y = size(rng);
  s.x = size(rng);
  s.xhat = size(rng);
  s.what = size(rng);
  return random_chain_model(rng, s, options);
}

ChainModel random_chain_model(Rng& rng, const AlphabetSizes& s,
                              const RandomModelOptions& options) {
  ChainModel m;
  m.sizes = s;
  m.p_w = random_distribution(rng, s.w);
  m.obs_kernel = random_kernel(rng, s.w, s.u * s.y);
  m.channel = random_kernel(rng, s.x, s.xhat);
  m.distortion.encoder = random_tensor(rng, s, options);
  m.distortion.decoder = random_tensor(rng, s, options);
  m.distortion.reduced = options.form == DistortionForm::kReduced;
  m.rate_ratio = options.rate_ratio;
  return m;
}

ReducedGame random_game(Rng& rng, std::size_t rows, std::size_t cols,
                        DistortionRange range) {
  ReducedGame g;
  g.enc_distortion.assign(rows, std::vector<double>(cols));
  g.dec_distortion.assign(rows, std::vector<double>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      g.enc_distortion[i][j] = draw_distortion(rng, range);
      g.dec_distortion[i][j] = draw_distortion(rng, range);
    }
  return g;
}

}  // namespace stratcomm
