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

#include "camotex/ngc.hpp"

#include <algorithm>
#include <stdexcept>

namespace camotex {

std::vector<TexelPoint> touched_points(const GradField& field) {
  std::vector<TexelPoint> pts;
  pts.reserve(field.touched.size());
  for (std::uint32_t t : field.touched) {
    int x = static_cast<int>(t % static_cast<std::uint32_t>(field.width));
    int y = static_cast<int>(t / static_cast<std::uint32_t>(field.width));
    pts.push_back({x, y, t});
  }
  return pts;
}

TexelKdTree build_index(const std::vector<TexelPoint>& points) {
  return TexelKdTree(points);
}

TexelKdTree::Hit nearest(const TexelKdTree& index, int qx, int qy) {
  return index.nearest(qx, qy);
}

GradField calibrate(const GradField& field, const std::vector<std::uint8_t>& mask,
                    double tau) {
  if (tau < 0.0) throw std::invalid_argument("search radius must be nonnegative");
  if (mask.size() != static_cast<std::size_t>(field.width) * field.height)
    throw std::invalid_argument("mask size does not match gradient field");

  // Empty sampled set: nothing to propagate from.
  if (field.touched.empty()) return field;

  GradField out(field.width, field.height);

  // Sampled texels pass through unchanged.
  std::vector<std::uint8_t> sampled(mask.size(), 0);
  for (std::uint32_t t : field.touched) {
    sampled[t] = 1;
    std::size_t b = static_cast<std::size_t>(t) * 3;
    out.data[b] = field.data[b];
    out.data[b + 1] = field.data[b + 1];
    out.data[b + 2] = field.data[b + 2];
  }

  TexelKdTree index(touched_points(field));
  double tau2 = tau * tau;

  std::vector<std::uint32_t> assigned;
  for (std::uint32_t t = 0; t < mask.size(); ++t) {
    if (!mask[t] || sampled[t]) continue;
    int x = static_cast<int>(t % static_cast<std::uint32_t>(field.width));
    int y = static_cast<int>(t / static_cast<std::uint32_t>(field.width));
    TexelKdTree::Hit hit = index.nearest(x, y);
    if (static_cast<double>(hit.dist2) > tau2) continue;
    std::size_t dst = static_cast<std::size_t>(t) * 3;
    std::size_t src = static_cast<std::size_t>(hit.id) * 3;
    out.data[dst] = field.data[src];
    out.data[dst + 1] = field.data[src + 1];
    out.data[dst + 2] = field.data[src + 2];
    assigned.push_back(t);
  }

  out.touched = field.touched;
  out.touched.insert(out.touched.end(), assigned.begin(), assigned.end());
  std::sort(out.touched.begin(), out.touched.end());
  return out;
}

}  // namespace camotex
