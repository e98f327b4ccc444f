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

#include <string>

#include "camotex/geometry.hpp"
#include "camotex/image.hpp"

namespace camotex {

// Composite backgrounds are procedural (flat color or vertical gradient) or
// loaded from a PPM file. Spec strings:
//   flat:R,G,B
//   gradient            (default sky-to-ground ramp)
//   gradient:R,G,B,R,G,B
//   <path.ppm>
struct BackgroundSpec {
  enum class Kind { Flat, Gradient, File };
  Kind kind = Kind::Gradient;
  Vec3 top{0.55, 0.70, 0.90};
  Vec3 bottom{0.35, 0.33, 0.30};
  std::string path;

  std::string to_string() const;
};

// Throws std::invalid_argument on a malformed spec.
BackgroundSpec parse_background_spec(const std::string& spec);

// Renders the spec at the requested size. File-backed backgrounds must match
// the size exactly.
Image make_background(const BackgroundSpec& spec, int w, int h);

}  // namespace camotex
