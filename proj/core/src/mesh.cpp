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

#include "camotex/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace camotex {

namespace {

// "3/7", "3/7/2" -> vertex and uv index (1-based). "3" and "3//2" have no uv.
bool parse_face_corner(const std::string& token, long& v_idx, long& t_idx) {
  std::size_t s1 = token.find('/');
  if (s1 == std::string::npos) return false;
  std::size_t s2 = token.find('/', s1 + 1);
  std::string vs = token.substr(0, s1);
  std::string ts = s2 == std::string::npos ? token.substr(s1 + 1)
                                           : token.substr(s1 + 1, s2 - s1 - 1);
  if (vs.empty() || ts.empty()) return false;
  try {
    std::size_t used = 0;
    v_idx = std::stol(vs, &used);
    if (used != vs.size()) return false;
    t_idx = std::stol(ts, &used);
    if (used != ts.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

Mesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);

  Mesh mesh;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;

    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z))
        throw ParseError(path, line_no, "malformed vertex record");
      mesh.vertices.push_back(p);
    } else if (tag == "vt") {
      Vec2 t;
      if (!(ls >> t.x >> t.y))
        throw ParseError(path, line_no, "malformed texture coordinate record");
      if (t.x < 0.0 || t.x > 1.0 || t.y < 0.0 || t.y > 1.0)
        throw ParseError(path, line_no, "texture coordinate outside [0,1]");
      mesh.uvs.push_back(t);
    } else if (tag == "f") {
      std::vector<FaceVertex> corners;
      std::string token;
      while (ls >> token) {
        long v_idx = 0, t_idx = 0;
        if (!parse_face_corner(token, v_idx, t_idx))
          throw ParseError(path, line_no,
                           "face corner '" + token + "' lacks a uv index");
        if (v_idx < 1 || static_cast<std::size_t>(v_idx) > mesh.vertices.size())
          throw ParseError(path, line_no,
                           "vertex index " + std::to_string(v_idx) +
                               " out of range (" +
                               std::to_string(mesh.vertices.size()) + " vertices)");
        if (t_idx < 1 || static_cast<std::size_t>(t_idx) > mesh.uvs.size())
          throw ParseError(path, line_no,
                           "uv index " + std::to_string(t_idx) + " out of range (" +
                               std::to_string(mesh.uvs.size()) + " uvs)");
        corners.push_back({static_cast<int>(v_idx - 1), static_cast<int>(t_idx - 1)});
      }
      if (corners.size() < 3)
        throw ParseError(path, line_no, "face with fewer than 3 corners");
      // Fan triangulation for quads and larger polygons.
      for (std::size_t i = 1; i + 1 < corners.size(); ++i)
        mesh.faces.push_back({{corners[0], corners[i], corners[i + 1]}});
    }
    // Other records (vn, usemtl, o, g, s, mtllib, ...) are ignored.
  }

  if (mesh.faces.empty()) throw ParseError(path, line_no, "no faces found");

  // Center the bounding box on the origin so orbital poses aim at the mesh.
  Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::max()};
  Vec3 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::lowest()};
  for (const Vec3& p : mesh.vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  Vec3 center = (lo + hi) * 0.5;
  for (Vec3& p : mesh.vertices) p = p - center;

  return mesh;
}

}  // namespace camotex
