// Copyright 2026 The camotex Authors
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
//
// Test-side reference implementations. Each is an independent brute-force
// route kept deliberately separate from the library code paths it checks.

#pragma once

#include <cstdint>
#include <vector>

#include "camotex/grad_field.hpp"
#include "camotex/image.hpp"
#include "camotex/kdtree.hpp"
#include "camotex/sample_map.hpp"

namespace camotex::oracle {

// O(N) linear scan nearest neighbor with the same (distance, id) tie rule.
inline std::pair<std::uint32_t, std::int64_t> linear_scan_nearest(
    const std::vector<TexelPoint>& points, int qx, int qy) {
  std::int64_t best_d2 = INT64_MAX;
  std::uint32_t best_id = 0;
  for (const TexelPoint& p : points) {
    std::int64_t dx = p.x - qx, dy = p.y - qy;
    std::int64_t d2 = dx * dx + dy * dy;
    if (d2 < best_d2 || (d2 == best_d2 && p.id < best_id)) {
      best_d2 = d2;
      best_id = p.id;
    }
  }
  return {best_id, best_d2};
}

// O(|unsampled| * |sampled|) propagation: for every trainable texel outside
// the touched set, scan all touched texels for the nearest and copy its
// gradient when within tau.
inline GradField brute_force_calibrate(const GradField& field,
                                       const std::vector<std::uint8_t>& mask,
                                       double tau) {
  if (field.touched.empty()) return field;

  std::vector<TexelPoint> sampled;
  for (std::uint32_t t : field.touched)
    sampled.push_back({static_cast<int>(t % field.width),
                       static_cast<int>(t / field.width), t});
  std::vector<std::uint8_t> is_sampled(mask.size(), 0);
  for (std::uint32_t t : field.touched) is_sampled[t] = 1;

  GradField out(field.width, field.height);
  double tau2 = tau * tau;
  for (std::uint32_t t = 0; t < mask.size(); ++t) {
    if (!mask[t]) continue;
    if (is_sampled[t]) {
      for (int c = 0; c < 3; ++c) out.at(t, c) = field.at(t, c);
      out.touched.push_back(t);
      continue;
    }
    auto [q, d2] = linear_scan_nearest(sampled, static_cast<int>(t % field.width),
                                       static_cast<int>(t / field.width));
    if (static_cast<double>(d2) > tau2) continue;
    for (int c = 0; c < 3; ++c) out.at(t, c) = field.at(q, c);
    out.touched.push_back(t);
  }
  return out;
}

// Classical Gram-Schmidt over plain flattened vectors, coefficients against
// the raw inputs, projections skipped below eps_abs.
inline std::vector<std::vector<double>> classical_gram_schmidt(
    const std::vector<std::vector<double>>& inputs, double eps_abs) {
  std::vector<std::vector<double>> out;
  std::vector<double> norms2;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::vector<double> r = inputs[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (norms2[j] <= eps_abs) continue;
      double num = 0.0;
      for (std::size_t d = 0; d < r.size(); ++d) num += inputs[i][d] * out[j][d];
      double alpha = num / norms2[j];
      for (std::size_t d = 0; d < r.size(); ++d) r[d] -= alpha * out[j][d];
    }
    double n2 = 0.0;
    for (double v : r) n2 += v * v;
    norms2.push_back(n2);
    out.push_back(std::move(r));
  }
  return out;
}

// Direct per-pixel scatter of an image gradient into texel bins.
inline std::vector<double> scatter_gradients(const Image& grad_image,
                                             const SampleMap& map) {
  std::vector<double> bins(static_cast<std::size_t>(map.texture_w) *
                               map.texture_h * 3,
                           0.0);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x) {
      std::size_t pix = static_cast<std::size_t>(y) * map.width + x;
      std::int64_t t = map.texel[pix];
      if (t < 0) continue;
      for (int c = 0; c < 3; ++c)
        bins[static_cast<std::size_t>(t) * 3 + c] += grad_image.at(x, y, c);
    }
  return bins;
}

}  // namespace camotex::oracle
