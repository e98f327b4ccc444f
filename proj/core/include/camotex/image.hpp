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

#include <cstddef>
#include <string>
#include <vector>

namespace camotex {

// Dense RGB raster, interleaved channels, values nominally in [0,1].
// Row 0 is the top of the image.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> rgb;  // size width*height*3, layout [y][x][c]

  Image() = default;
  Image(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0.0) {}

  double& at(int x, int y, int c) { return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
  double at(int x, int y, int c) const { return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Binary PPM (P6, 8-bit) I/O. Values are clamped to [0,1] and rounded on
// write; read maps byte k to k/255.0. Throws ParseError / std::runtime_error
// on malformed input or I/O failure.
void save_ppm(const Image& img, const std::string& path);
Image load_ppm(const std::string& path);

// Side-by-side concatenation; all tiles must share the height.
Image hconcat(const std::vector<Image>& tiles);

}  // namespace camotex
