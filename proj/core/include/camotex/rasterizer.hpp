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

#include "camotex/camera.hpp"
#include "camotex/grad_field.hpp"
#include "camotex/image.hpp"
#include "camotex/mesh.hpp"
#include "camotex/sample_map.hpp"
#include "camotex/texture.hpp"

namespace camotex {

// Software rasterizer. Perspective projection, z-buffered triangle fill with
// no back-face culling; depth ties go to the lower face index so fills are
// deterministic. Covered pixels record the nearest texel of their
// perspective-correct interpolated UV. Empty coverage (object outside the
// frustum) is legal.
SampleMap rasterize(const Mesh& mesh, const CameraPose& pose, int texture_w,
                    int texture_h);

// Nearest-texel lookup: covered pixels take the exact rgb of their source
// texel, uncovered pixels are zero.
Image shade(const SampleMap& map, const Texture& texture);

// out = coverage * foreground + (1 - coverage) * background, per pixel.
// The coverage mask is binary, so every output pixel equals one input pixel
// exactly. Throws std::invalid_argument on dimension mismatch.
Image composite(const Image& foreground, const SampleMap& map,
                const Image& background);

// Reverse pass of shade+composite: each covered pixel's gradient accumulates
// into its source texel. Texels whose sum is exactly zero are left
// untouched, so an all-zero upstream gradient yields an empty field.
GradField backprop_to_texture(const Image& grad_image, const SampleMap& map);

}  // namespace camotex
