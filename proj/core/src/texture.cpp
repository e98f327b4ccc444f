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

#include "camotex/texture.hpp"

#include <algorithm>
#include <stdexcept>

#include "camotex/rng.hpp"

namespace camotex {

Texture::Texture(int w, int h, std::vector<std::uint8_t> mask_in)
    : width(w),
      height(h),
      rgb(static_cast<std::size_t>(w) * h * 3, 0.5),
      mask(std::move(mask_in)) {
  if (mask.size() != texel_count())
    throw std::invalid_argument("mask size does not match texture dimensions");
  for (std::uint32_t t = 0; t < texel_count(); ++t)
    if (mask[t]) trainable.push_back(t);
  if (trainable.empty())
    throw std::invalid_argument("trainable region is empty");
}

void Texture::clamp01() {
  for (double& v : rgb) v = std::clamp(v, 0.0, 1.0);
}

std::vector<std::uint8_t> mask_all(int w, int h) {
  return std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 1);
}

std::vector<std::uint8_t> load_mask(const std::string& path, int w, int h) {
  Image img = load_ppm(path);
  if (img.width != w || img.height != h)
    throw std::invalid_argument("mask image dimensions do not match texture");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double lum = (img.at(x, y, 0) + img.at(x, y, 1) + img.at(x, y, 2)) / 3.0;
      mask[static_cast<std::size_t>(y) * w + x] = lum > 0.5 ? 1 : 0;
    }
  return mask;
}

Texture make_initial_texture(int w, int h, std::vector<std::uint8_t> mask,
                             std::uint64_t seed) {
  Texture tex(w, h, std::move(mask));
  SplitMix64 rng(seed);
  for (std::uint32_t t : tex.trainable)
    for (int c = 0; c < 3; ++c) tex.at(t, c) = rng.next_range(0.4, 0.6);
  return tex;
}

Image texture_to_image(const Texture& tex) {
  Image img(tex.width, tex.height);
  img.rgb = tex.rgb;
  return img;
}

Texture texture_from_image(const Image& img, std::vector<std::uint8_t> mask) {
  Texture tex(img.width, img.height, std::move(mask));
  tex.rgb = img.rgb;
  return tex;
}

}  // namespace camotex
