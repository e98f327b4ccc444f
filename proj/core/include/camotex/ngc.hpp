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

#pragma once

#include <cstdint>
#include <vector>

#include "camotex/grad_field.hpp"
#include "camotex/kdtree.hpp"

namespace camotex {

// Nearest-gradient calibration: rendering samples the texture sparsely, and
// the sparsity varies with camera distance, so raw backpropagated gradients
// touch an inconsistent subset of texels. Calibration copies each sampled
// texel's gradient to the unsampled trainable texels whose nearest sampled
// neighbor lies within the search radius, restoring locally continuous
// updates.

struct NgcConfig {
  double tau = 8.0;  // search radius in texel units, >= 0
};

// Texel coordinates of a field's touched set, ready for indexing.
std::vector<TexelPoint> touched_points(const GradField& field);

// Builds the spatial index over sampled texels. Throws on an empty list.
TexelKdTree build_index(const std::vector<TexelPoint>& points);

// Exact nearest sampled texel and its Euclidean distance.
TexelKdTree::Hit nearest(const TexelKdTree& index, int qx, int qy);

// Propagation rule. Requires field.touched to lie inside the mask. Sampled
// texels keep their gradient unchanged; each unsampled trainable texel takes
// the gradient of its nearest sampled texel if that is within tau, else
// stays zero; texels outside the mask stay zero. An empty touched set or
// tau = 0 degenerates to a copy of the input.
GradField calibrate(const GradField& field, const std::vector<std::uint8_t>& mask,
                    double tau);

}  // namespace camotex
