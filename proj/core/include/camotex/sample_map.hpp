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
#include <unordered_map>
#include <vector>

namespace camotex {

// Per-pixel rasterization output: which texel each covered pixel samples,
// plus the z-buffer the fill was resolved with. texel[i] == kUncovered marks
// background pixels; the coverage flags double as the compositing mask.
struct SampleMap {
  static constexpr std::int64_t kUncovered = -1;

  int width = 0;
  int height = 0;
  int texture_w = 0;
  int texture_h = 0;
  std::vector<std::int64_t> texel;  // width*height, texel id or kUncovered
  std::vector<double> depth;        // width*height, valid where covered

  SampleMap() = default;
  SampleMap(int w, int h, int tw, int th)
      : width(w),
        height(h),
        texture_w(tw),
        texture_h(th),
        texel(static_cast<std::size_t>(w) * h, kUncovered),
        depth(static_cast<std::size_t>(w) * h, 0.0) {}

  bool covered(std::size_t pixel) const { return texel[pixel] >= 0; }

  std::size_t covered_count() const {
    std::size_t n = 0;
    for (auto t : texel) n += (t >= 0);
    return n;
  }

  // Distinct texels sampled by at least one covered pixel, ascending.
  std::vector<std::uint32_t> sampled_texels() const;

  // Inverse index: texel id -> number of pixels sampling it.
  std::unordered_map<std::uint32_t, int> pixels_per_texel() const;
};

}  // namespace camotex
