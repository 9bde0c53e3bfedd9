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

#include "stratcomm/model.hpp"

#include <cmath>
#include <sstream>

namespace stratcomm {

DistortionTensor::DistortionTensor(std::size_t w, std::size_t u, std::size_t y,
                                   std::size_t what, std::vector<double> values)
    : w_(w), u_(u), y_(y), what_(what), values_(std::move(values)) {
  if (values_.size() != w_ * u_ * y_ * what_) {
    throw DimensionError("distortion tensor: expected " +
                         std::to_string(w_ * u_ * y_ * what_) +
                         " entries, got " + std::to_string(values_.size()));
  }
}

DistortionTensor DistortionTensor::from_matrix(
    const std::vector<std::vector<double>>& matrix, std::size_t u,
    std::size_t y) {
  if (matrix.empty()) throw DimensionError("distortion matrix: no rows");
  const std::size_t w = matrix.size();
  const std::size_t what = matrix.front().size();
  std::vector<double> v(w * u * y * what);
  for (std::size_t iw = 0; iw < w; ++iw) {
    if (matrix[iw].size() != what) {
      throw DimensionError("distortion matrix: row " + std::to_string(iw) +
                           " has " + std::to_string(matrix[iw].size()) +
                           " entries, expected " + std::to_string(what));
    }
    for (std::size_t iu = 0; iu < u; ++iu)
      for (std::size_t iy = 0; iy < y; ++iy)
        for (std::size_t k = 0; k < what; ++k)
          v[((iw * u + iu) * y + iy) * what + k] = matrix[iw][k];
  }
  return DistortionTensor(w, u, y, what, std::move(v));
}

bool DistortionTensor::depends_only_on_w_what() const {
  for (std::size_t w = 0; w < w_; ++w)
    for (std::size_t u = 0; u < u_; ++u)
      for (std::size_t y = 0; y < y_; ++y)
        for (std::size_t k = 0; k < what_; ++k)
          if ((*this)(w, u, y, k) != (*this)(w, 0, 0, k)) return false;
  return true;
}

std::vector<Violation> validate_model(const ChainModel& m) {
  std::vector<Violation> out;
  const auto& s = m.sizes;
  auto add = [&](std::string field, std::string check) {
    out.push_back({std::move(field), std::move(check)});
  };

  if (s.w == 0 || s.u == 0 || s.y == 0 || s.x == 0 || s.xhat == 0 ||
      s.what == 0) {
    add("alphabet_sizes", "every alphabet must be nonempty");
    return out;
  }

  if (m.p_w.size() != s.w) {
    add("p_w", "size " + std::to_string(m.p_w.size()) + " != |W| " +
                   std::to_string(s.w));
  } else if (auto msg = m.p_w.check(); !msg.empty()) {
    add("p_w", "stochasticity: " + msg);
  }

  auto check_kernel = [&](const std::string& field, const ConditionalKernel& k,
                          std::size_t in, std::size_t outs) {
    if (k.inputs() != in || k.outputs() != outs) {
      add(field, "shape " + std::to_string(k.inputs()) + "x" +
                     std::to_string(k.outputs()) + " != expected " +
                     std::to_string(in) + "x" + std::to_string(outs));
    } else if (auto msg = k.check(); !msg.empty()) {
      add(field, "stochasticity: " + msg);
    }
  };
  check_kernel("obs_kernel", m.obs_kernel, s.w, s.u * s.y);
  check_kernel("channel", m.channel, s.x, s.xhat);

  auto check_tensor = [&](const std::string& field, const DistortionTensor& t) {
    if (t.w() != s.w || t.u() != s.u || t.y() != s.y || t.what() != s.what) {
      add(field, "shape does not match (|W|, |U|, |Y|, |What|)");
      return;
    }
    for (double v : t.values()) {
      if (!std::isfinite(v)) {
        add(field, "entries must be finite");
        return;
      }
    }
    if (m.distortion.reduced && !t.depends_only_on_w_what()) {
      add(field, "reduced flag set but entries vary across (u, y)");
    }
  };
  check_tensor("distortion.encoder", m.distortion.encoder);
  check_tensor("distortion.decoder", m.distortion.decoder);

  if (!(m.rate_ratio > 0.0) || !std::isfinite(m.rate_ratio)) {
    std::ostringstream os;
    os << "positivity: rate_ratio must be finite and > 0, got " << m.rate_ratio;
    add("rate_ratio", os.str());
  }
  return out;
}

void require_valid(const ChainModel& model) {
  auto v = validate_model(model);
  if (v.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& x : v) msg += " [" + x.field + ": " + x.check + "]";
  throw ValidationError(msg);
}

void require_compatible(const ChainModel& model, const EncoderStrategy& g) {
  if (g.kernel.inputs() != model.sizes.u || g.kernel.outputs() != model.sizes.x) {
    throw DimensionError("encoder strategy must be |U| x |X|");
  }
  if (auto msg = g.kernel.check(); !msg.empty()) {
    throw ValidationError("encoder strategy: " + msg);
  }
}

void require_compatible(const ChainModel& model, const DecoderStrategy& h) {
  if (h.kernel.inputs() != model.sizes.contexts() ||
      h.kernel.outputs() != model.sizes.what) {
    throw DimensionError("decoder strategy must be (|Y||Xhat|) x |What|");
  }
  if (auto msg = h.kernel.check(); !msg.empty()) {
    throw ValidationError("decoder strategy: " + msg);
  }
}

JointTensor observation_joint(const ChainModel& m) {
  const auto& s = m.sizes;
  const Factor factors[] = {
      source_factor(axis::kW, m.p_w),
      Factor{{axis::kW}, {{axis::kU, s.u}, {axis::kY, s.y}}, m.obs_kernel},
  };
  return compose(factors);
}

JointTensor chain_joint(const ChainModel& m, const EncoderStrategy& g,
                        const DecoderStrategy& h) {
  require_compatible(m, g);
  require_compatible(m, h);
  const auto& s = m.sizes;
  const Factor factors[] = {
      source_factor(axis::kW, m.p_w),
      Factor{{axis::kW}, {{axis::kU, s.u}, {axis::kY, s.y}}, m.obs_kernel},
      Factor{{axis::kU}, {{axis::kX, s.x}}, g.kernel},
      Factor{{axis::kX}, {{axis::kXhat, s.xhat}}, m.channel},
      Factor{{axis::kY, axis::kXhat}, {{axis::kWhat, s.what}}, h.kernel},
  };
  return compose(factors);
}

double expected_distortion(const ChainModel& m, const EncoderStrategy& g,
                           const DecoderStrategy& h, Party which) {
  require_compatible(m, g);
  require_compatible(m, h);
  const auto& s = m.sizes;
  const auto& d =
      which == Party::kEncoder ? m.distortion.encoder : m.distortion.decoder;
  double total = 0.0;
  for (std::size_t w = 0; w < s.w; ++w) {
    const double pw = m.p_w[w];
    if (pw == 0.0) continue;
    for (std::size_t u = 0; u < s.u; ++u) {
      for (std::size_t y = 0; y < s.y; ++y) {
        const double puy = pw * m.obs_kernel(w, u * s.y + y);
        if (puy == 0.0) continue;
        for (std::size_t x = 0; x < s.x; ++x) {
          const double px = puy * g.kernel(u, x);
          if (px == 0.0) continue;
          for (std::size_t xh = 0; xh < s.xhat; ++xh) {
            const double pxh = px * m.channel(x, xh);
            if (pxh == 0.0) continue;
            const std::size_t c = y * s.xhat + xh;
            for (std::size_t k = 0; k < s.what; ++k) {
              total += pxh * h.kernel(c, k) * d(w, u, y, k);
            }
          }
        }
      }
    }
  }
  return total;
}

BilinearDistortion bilinear_form(const ChainModel& m) {
  require_valid(m);
  const auto& s = m.sizes;
  const std::size_t nc = s.contexts();

  // a[u][y][what] = sum_w P(w) P(u,y|w) d(w,u,y,what); q[u][y] = P(u,y).
  std::vector<double> a_enc(s.u * s.y * s.what, 0.0);
  std::vector<double> a_dec(s.u * s.y * s.what, 0.0);
  std::vector<double> q(s.u * s.y, 0.0);
  for (std::size_t w = 0; w < s.w; ++w)
    for (std::size_t u = 0; u < s.u; ++u)
      for (std::size_t y = 0; y < s.y; ++y) {
        const double p = m.p_w[w] * m.obs_kernel(w, u * s.y + y);
        q[u * s.y + y] += p;
        for (std::size_t k = 0; k < s.what; ++k) {
          a_enc[(u * s.y + y) * s.what + k] +=
              p * m.distortion.encoder(w, u, y, k);
          a_dec[(u * s.y + y) * s.what + k] +=
              p * m.distortion.decoder(w, u, y, k);
        }
      }

  BilinearDistortion form;
  form.sizes = s;
  form.encoder.assign(s.u * s.x * nc * s.what, 0.0);
  form.decoder.assign(form.encoder.size(), 0.0);
  form.context_mass.assign(s.u * s.x * nc, 0.0);
  for (std::size_t u = 0; u < s.u; ++u)
    for (std::size_t x = 0; x < s.x; ++x)
      for (std::size_t y = 0; y < s.y; ++y)
        for (std::size_t xh = 0; xh < s.xhat; ++xh) {
          const double pc = m.channel(x, xh);
          const std::size_t c = y * s.xhat + xh;
          form.context_mass[form.mass_index(u, x, c)] = pc * q[u * s.y + y];
          for (std::size_t k = 0; k < s.what; ++k) {
            form.encoder[form.index(u, x, c, k)] =
                pc * a_enc[(u * s.y + y) * s.what + k];
            form.decoder[form.index(u, x, c, k)] =
                pc * a_dec[(u * s.y + y) * s.what + k];
          }
        }
  return form;
}

double evaluate(const BilinearDistortion& form, const ConditionalKernel& g,
                const ConditionalKernel& h, Party which) {
  const auto& s = form.sizes;
  const auto& coeff = form.of(which);
  const std::size_t nc = s.contexts();
  double total = 0.0;
  for (std::size_t u = 0; u < s.u; ++u)
    for (std::size_t x = 0; x < s.x; ++x) {
      const double gx = g(u, x);
      if (gx == 0.0) continue;
      for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t k = 0; k < s.what; ++k)
          total += gx * h(c, k) * coeff[form.index(u, x, c, k)];
    }
  return total;
}

ContextCosts context_costs(const BilinearDistortion& form,
                           const ConditionalKernel& g) {
  const auto& s = form.sizes;
  const std::size_t nc = s.contexts();
  ContextCosts out;
  out.encoder.assign(nc * s.what, 0.0);
  out.decoder.assign(nc * s.what, 0.0);
  out.probability.assign(nc, 0.0);
  for (std::size_t u = 0; u < s.u; ++u)
    for (std::size_t x = 0; x < s.x; ++x) {
      const double gx = g(u, x);
      if (gx == 0.0) continue;
      for (std::size_t c = 0; c < nc; ++c) {
        out.probability[c] += gx * form.context_mass[form.mass_index(u, x, c)];
        for (std::size_t k = 0; k < s.what; ++k) {
          out.encoder[c * s.what + k] += gx * form.encoder[form.index(u, x, c, k)];
          out.decoder[c * s.what + k] += gx * form.decoder[form.index(u, x, c, k)];
        }
      }
    }
  return out;
}

}  // namespace stratcomm
