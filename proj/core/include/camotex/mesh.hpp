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

#include <stdexcept>
#include <string>
#include <vector>

#include "camotex/geometry.hpp"

namespace camotex {

// Thrown on malformed input files; message carries "path:line:".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

struct FaceVertex {
  int vertex = 0;  // index into Mesh::vertices
  int uv = 0;      // index into Mesh::uvs
};

struct Face {
  FaceVertex v[3];
};

// Triangle mesh with per-corner UVs. Positions are in meters; the loader
// re-centers the bounding box on the origin so orbital cameras aim at the
// object. UVs live in [0,1]^2.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Vec2> uvs;
  std::vector<Face> faces;
};

// Loads the v/vt/f subset of Wavefront OBJ. Polygons are fan-triangulated.
// Faces without vt indices, out-of-range indices, and UVs outside [0,1] are
// rejected with a ParseError naming the offending line. Normals and material
// statements are ignored.
Mesh load_obj(const std::string& path);

}  // namespace camotex
