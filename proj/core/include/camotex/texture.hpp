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

#include "camotex/image.hpp"

namespace camotex {

// Trainable RGB texel grid plus the mask delimiting the optimizable region.
// The mask is fixed at construction; rgb is clamped to [0,1] after every
// update. Texel ids are row-major: id = v_texel * width + u_texel, where
// row 0 corresponds to texture coordinate v = 0.
struct Texture {
  int width = 0;
  int height = 0;
  std::vector<double> rgb;           // width*height*3, interleaved
  std::vector<std::uint8_t> mask;    // width*height, 1 = trainable
  std::vector<std::uint32_t> trainable;  // sorted texel ids where mask is set

  Texture() = default;
  Texture(int w, int h, std::vector<std::uint8_t> mask_in);

  double& at(std::uint32_t texel, int c) { return rgb[static_cast<std::size_t>(texel) * 3 + c]; }
  double at(std::uint32_t texel, int c) const { return rgb[static_cast<std::size_t>(texel) * 3 + c]; }

  std::size_t texel_count() const { return static_cast<std::size_t>(width) * height; }

  void clamp01();
};

std::vector<std::uint8_t> mask_all(int w, int h);

// Mask from an image file: a texel is trainable where the loaded pixel is
// brighter than 50% gray. Dimensions must match exactly.
std::vector<std::uint8_t> load_mask(const std::string& path, int w, int h);

// Near-gray seeded initialization, uniform in [0.4, 0.6] per channel.
// Masked-out texels are set to 0.5 exactly and never change afterwards.
Texture make_initial_texture(int w, int h, std::vector<std::uint8_t> mask,
                             std::uint64_t seed);

// Texel grid <-> image conversion for checkpoints and the render/eval CLI.
Image texture_to_image(const Texture& tex);
Texture texture_from_image(const Image& img, std::vector<std::uint8_t> mask);

}  // namespace camotex
