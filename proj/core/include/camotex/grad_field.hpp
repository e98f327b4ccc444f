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
#include <string>
#include <vector>

namespace camotex {

// Texture-shaped gradient buffer. `touched` lists the texels holding a
// nonzero gradient, ascending; the dense data is exactly zero everywhere
// else. Texels whose accumulated gradient cancels to exact zero are not
// touched.
struct GradField {
  int width = 0;
  int height = 0;
  std::vector<double> data;            // width*height*3, interleaved
  std::vector<std::uint32_t> touched;  // sorted ascending

  GradField() = default;
  GradField(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0.0) {}

  double& at(std::uint32_t texel, int c) { return data[static_cast<std::size_t>(texel) * 3 + c]; }
  double at(std::uint32_t texel, int c) const { return data[static_cast<std::size_t>(texel) * 3 + c]; }

  bool nonzero_at(std::uint32_t texel) const {
    std::size_t b = static_cast<std::size_t>(texel) * 3;
    return data[b] != 0.0 || data[b + 1] != 0.0 || data[b + 2] != 0.0;
  }

  // Rebuilds `touched` by scanning for nonzero entries.
  void recompute_touched();
};

// Zeroes every entry outside the mask and drops those texels from `touched`.
void apply_mask(GradField& field, const std::vector<std::uint8_t>& mask);

// Flattened double-precision linear algebra over the full grid (fields are
// zero outside the trainable region, so this equals the trainable-vector
// inner product).
double dot(const GradField& a, const GradField& b);
double squared_norm(const GradField& f);

// y += alpha * x, then y.touched is recomputed lazily by the caller.
void axpy_into(double alpha, const GradField& x, GradField& y);

// Per-channel grayscale heatmap, affine-normalized so min -> 0 and
// max -> 255; the PPM header comment records the min/max used.
void save_gradfield_heatmap(const GradField& field, int channel,
                            const std::string& path);

// Coverage dump: touched texels white, everything else black.
void save_touched_mask(const GradField& field, const std::string& path);

}  // namespace camotex
