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

#include "camotex/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace camotex {

namespace {

constexpr double kNearPlane = 0.05;  // meters in front of the eye

struct CamVertex {
  Vec3 pos;  // camera space: x right, y up, z = depth along the view axis
  Vec2 uv;
};

struct ScreenVertex {
  double x = 0.0, y = 0.0;   // pixel coordinates
  double inv_z = 0.0;        // 1/depth
  double u_over_z = 0.0;     // uv pre-divided for perspective-correct interp
  double v_over_z = 0.0;
};

// Sutherland-Hodgman against the near plane z >= kNearPlane. A triangle
// clips to at most 4 vertices.
int clip_near(const CamVertex in[3], CamVertex out[4]) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const CamVertex& a = in[i];
    const CamVertex& b = in[(i + 1) % 3];
    bool a_in = a.pos.z >= kNearPlane;
    bool b_in = b.pos.z >= kNearPlane;
    if (a_in) out[n++] = a;
    if (a_in != b_in) {
      double t = (kNearPlane - a.pos.z) / (b.pos.z - a.pos.z);
      CamVertex c;
      c.pos = a.pos + (b.pos - a.pos) * t;
      c.uv = {a.uv.x + (b.uv.x - a.uv.x) * t, a.uv.y + (b.uv.y - a.uv.y) * t};
      out[n++] = c;
    }
  }
  return n;
}

inline double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

void fill_triangle(const ScreenVertex& v0, const ScreenVertex& v1,
                   const ScreenVertex& v2, SampleMap& map,
                   std::vector<double>& zbuf) {
  double area = edge(v0, v1, v2.x, v2.y);
  if (std::abs(area) < 1e-12) return;

  int x_lo = std::max(0, static_cast<int>(std::floor(std::min({v0.x, v1.x, v2.x}))));
  int x_hi = std::min(map.width - 1,
                      static_cast<int>(std::ceil(std::max({v0.x, v1.x, v2.x}))));
  int y_lo = std::max(0, static_cast<int>(std::floor(std::min({v0.y, v1.y, v2.y}))));
  int y_hi = std::min(map.height - 1,
                      static_cast<int>(std::ceil(std::max({v0.y, v1.y, v2.y}))));

  for (int iy = y_lo; iy <= y_hi; ++iy) {
    double py = iy + 0.5;
    for (int ix = x_lo; ix <= x_hi; ++ix) {
      double px = ix + 0.5;
      double w0 = edge(v1, v2, px, py);
      double w1 = edge(v2, v0, px, py);
      double w2 = edge(v0, v1, px, py);
      bool inside = (w0 >= 0.0 && w1 >= 0.0 && w2 >= 0.0) ||
                    (w0 <= 0.0 && w1 <= 0.0 && w2 <= 0.0);
      if (!inside) continue;

      double l0 = w0 / area, l1 = w1 / area, l2 = w2 / area;
      double inv_z = l0 * v0.inv_z + l1 * v1.inv_z + l2 * v2.inv_z;
      if (inv_z <= 0.0) continue;
      double depth = 1.0 / inv_z;

      std::size_t pix = static_cast<std::size_t>(iy) * map.width + ix;
      // Strict test: on a tie the earlier (lower-index) face keeps the pixel.
      if (depth >= zbuf[pix]) continue;
      zbuf[pix] = depth;

      double u = (l0 * v0.u_over_z + l1 * v1.u_over_z + l2 * v2.u_over_z) * depth;
      double v = (l0 * v0.v_over_z + l1 * v1.v_over_z + l2 * v2.v_over_z) * depth;
      int tx = std::clamp(static_cast<int>(std::floor(u * map.texture_w)), 0,
                          map.texture_w - 1);
      int ty = std::clamp(static_cast<int>(std::floor(v * map.texture_h)), 0,
                          map.texture_h - 1);
      map.texel[pix] = static_cast<std::int64_t>(ty) * map.texture_w + tx;
      map.depth[pix] = depth;
    }
  }
}

}  // namespace

SampleMap rasterize(const Mesh& mesh, const CameraPose& pose, int texture_w,
                    int texture_h) {
  SampleMap map(pose.image_w, pose.image_h, texture_w, texture_h);
  std::vector<double> zbuf(map.texel.size(), std::numeric_limits<double>::infinity());

  CameraBasis cam = camera_basis(pose);
  double tan_v = std::tan(pose.fov_deg * 0.5 * kDegToRad);
  double tan_h = tan_v * static_cast<double>(pose.image_w) / pose.image_h;
  double half_w = pose.image_w * 0.5;
  double half_h = pose.image_h * 0.5;

  for (const Face& face : mesh.faces) {
    CamVertex tri[3];
    for (int i = 0; i < 3; ++i) {
      Vec3 d = mesh.vertices[face.v[i].vertex] - cam.eye;
      tri[i].pos = {dot(d, cam.right), dot(d, cam.up), dot(d, cam.forward)};
      tri[i].uv = mesh.uvs[face.v[i].uv];
    }

    CamVertex poly[4];
    int n = clip_near(tri, poly);
    if (n < 3) continue;

    ScreenVertex sv[4];
    for (int i = 0; i < n; ++i) {
      double z = poly[i].pos.z;
      sv[i].x = (poly[i].pos.x / (z * tan_h)) * half_w + half_w;
      sv[i].y = half_h - (poly[i].pos.y / (z * tan_v)) * half_h;
      sv[i].inv_z = 1.0 / z;
      sv[i].u_over_z = poly[i].uv.x / z;
      sv[i].v_over_z = poly[i].uv.y / z;
    }
    for (int i = 1; i + 1 < n; ++i)
      fill_triangle(sv[0], sv[i], sv[i + 1], map, zbuf);
  }
  return map;
}

Image shade(const SampleMap& map, const Texture& texture) {
  if (map.texture_w != texture.width || map.texture_h != texture.height)
    throw std::invalid_argument("sample map was built for a different texture size");
  Image out(map.width, map.height);
  for (std::size_t pix = 0; pix < map.texel.size(); ++pix) {
    std::int64_t t = map.texel[pix];
    if (t < 0) continue;
    std::size_t src = static_cast<std::size_t>(t) * 3;
    std::size_t dst = pix * 3;
    out.rgb[dst] = texture.rgb[src];
    out.rgb[dst + 1] = texture.rgb[src + 1];
    out.rgb[dst + 2] = texture.rgb[src + 2];
  }
  return out;
}

Image composite(const Image& foreground, const SampleMap& map,
                const Image& background) {
  if (foreground.width != map.width || foreground.height != map.height ||
      background.width != map.width || background.height != map.height)
    throw std::invalid_argument("composite: dimension mismatch");
  Image out(map.width, map.height);
  for (std::size_t pix = 0; pix < map.texel.size(); ++pix) {
    const Image& src = map.covered(pix) ? foreground : background;
    std::size_t b = pix * 3;
    out.rgb[b] = src.rgb[b];
    out.rgb[b + 1] = src.rgb[b + 1];
    out.rgb[b + 2] = src.rgb[b + 2];
  }
  return out;
}

GradField backprop_to_texture(const Image& grad_image, const SampleMap& map) {
  if (grad_image.width != map.width || grad_image.height != map.height)
    throw std::invalid_argument("backprop_to_texture: dimension mismatch");
  GradField field(map.texture_w, map.texture_h);
  std::vector<std::uint32_t> candidates;
  std::vector<std::uint8_t> seen(field.data.size() / 3, 0);
  for (std::size_t pix = 0; pix < map.texel.size(); ++pix) {
    std::int64_t t = map.texel[pix];
    if (t < 0) continue;
    std::size_t dst = static_cast<std::size_t>(t) * 3;
    std::size_t src = pix * 3;
    field.data[dst] += grad_image.rgb[src];
    field.data[dst + 1] += grad_image.rgb[src + 1];
    field.data[dst + 2] += grad_image.rgb[src + 2];
    if (!seen[t]) {
      seen[t] = 1;
      candidates.push_back(static_cast<std::uint32_t>(t));
    }
  }
  // Sampled texels whose accumulated gradient is exactly zero carry no
  // signal and are dropped from the touched set.
  std::sort(candidates.begin(), candidates.end());
  for (std::uint32_t t : candidates)
    if (field.nonzero_at(t)) field.touched.push_back(t);
  return field;
}

}  // namespace camotex
