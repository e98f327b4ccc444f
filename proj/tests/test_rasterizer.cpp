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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "camotex/mesh.hpp"
#include "camotex/rasterizer.hpp"
#include "camotex/rng.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace camotex;

namespace {

// A large textured quad in the y-z plane facing +x; fills the frustum of a
// camera at azimuth 0 when half_extent is generous.
Mesh make_quad(double half_extent) {
  Mesh mesh;
  mesh.vertices = {{0, -half_extent, -half_extent},
                   {0, half_extent, -half_extent},
                   {0, half_extent, half_extent},
                   {0, -half_extent, half_extent}};
  mesh.uvs = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  mesh.faces.push_back({{{0, 0}, {1, 1}, {2, 2}}});
  mesh.faces.push_back({{{0, 0}, {2, 2}, {3, 3}}});
  return mesh;
}

SampleMap random_sample_map(int w, int h, int tw, int th, double cover_prob,
                            SplitMix64& rng) {
  SampleMap map(w, h, tw, th);
  for (std::size_t i = 0; i < map.texel.size(); ++i)
    if (rng.next_double() < cover_prob) {
      map.texel[i] = static_cast<std::int64_t>(
          rng.next_below(static_cast<std::uint64_t>(tw) * th));
      map.depth[i] = 1.0;
    }
  return map;
}

Image random_image(int w, int h, SplitMix64& rng) {
  Image img(w, h);
  for (double& v : img.rgb) v = rng.next_double();
  return img;
}

}  // namespace

TEST_CASE("a frame-filling quad covers every pixel") {
  Mesh quad = make_quad(50.0);
  CameraPose pose = make_pose(0, 0, 1.0, 60, 64, 64);
  SampleMap map = rasterize(quad, pose, 16, 16);
  CHECK(map.covered_count() == 64 * 64);
}

TEST_CASE("coverage and distinct-texel count shrink with distance") {
  Mesh car = load_obj(test::car_obj());
  CameraPose near = make_pose(30, 15, 5, 60, 128, 128);
  CameraPose far = make_pose(30, 15, 15, 60, 128, 128);
  SampleMap m_near = rasterize(car, near, 64, 64);
  SampleMap m_far = rasterize(car, far, 64, 64);
  CHECK(m_far.covered_count() < m_near.covered_count());
  CHECK(m_far.sampled_texels().size() < m_near.sampled_texels().size());
  CHECK(m_far.covered_count() > 0);
}

TEST_CASE("sampled texel count is non-increasing across the distance sweep") {
  Mesh car = load_obj(test::car_obj());
  std::size_t prev = SIZE_MAX;
  for (double d : {5.0, 7.5, 10.0, 12.5, 15.0}) {
    CameraPose pose = make_pose(30, 15, d, 60, 64, 64);
    std::size_t n = rasterize(car, pose, 64, 64).sampled_texels().size();
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("a pose looking away from the object covers nothing") {
  // The quad sits behind the camera once the camera walks past it.
  Mesh quad = make_quad(0.5);
  Mesh far_quad = quad;
  for (Vec3& v : far_quad.vertices) v.x += 100.0;  // object far outside the frustum
  CameraPose pose = make_pose(0, 0, 10, 60, 64, 64);
  SampleMap map = rasterize(far_quad, pose, 16, 16);
  CHECK(map.covered_count() == 0);
}

TEST_CASE("shade copies source texel colors exactly") {
  Mesh quad = make_quad(50.0);
  CameraPose pose = make_pose(0, 0, 1.0, 60, 32, 32);
  SampleMap map = rasterize(quad, pose, 8, 8);

  SUBCASE("uniform texture shades to the constant everywhere") {
    Texture tex(8, 8, mask_all(8, 8));
    Image img = shade(map, tex);
    for (std::size_t pix = 0; pix < map.texel.size(); ++pix)
      for (int c = 0; c < 3; ++c) CHECK(img.rgb[pix * 3 + c] == 0.5);
  }

  SUBCASE("a single red texel paints exactly its sampling pixels") {
    Texture tex(8, 8, mask_all(8, 8));
    std::uint32_t target = map.sampled_texels()[3];
    tex.at(target, 0) = 1.0;
    tex.at(target, 1) = 0.0;
    tex.at(target, 2) = 0.0;
    Image img = shade(map, tex);
    int red_pixels = 0;
    for (std::size_t pix = 0; pix < map.texel.size(); ++pix)
      if (img.rgb[pix * 3] == 1.0 && img.rgb[pix * 3 + 1] == 0.0) ++red_pixels;
    CHECK(red_pixels == map.pixels_per_texel().at(target));
  }

  SUBCASE("empty coverage shades to black") {
    SampleMap empty(16, 16, 8, 8);
    Texture tex(8, 8, mask_all(8, 8));
    Image img = shade(empty, tex);
    for (double v : img.rgb) CHECK(v == 0.0);
  }
}

TEST_CASE("shade is piecewise constant: unsampled texels do not matter") {
  Mesh car = load_obj(test::car_obj());
  CameraPose pose = make_pose(70, 20, 10, 60, 64, 64);
  SampleMap map = rasterize(car, pose, 32, 32);
  Texture tex = make_initial_texture(32, 32, mask_all(32, 32), 5);
  Image before = shade(map, tex);

  auto sampled = map.sampled_texels();
  std::vector<std::uint8_t> is_sampled(tex.texel_count(), 0);
  for (std::uint32_t t : sampled) is_sampled[t] = 1;
  std::uint32_t untouched = 0;
  while (is_sampled[untouched]) ++untouched;
  tex.at(untouched, 0) = 0.123;
  Image after = shade(map, tex);
  CHECK(before.rgb == after.rgb);
}

TEST_CASE("composite picks foreground exactly on coverage") {
  SplitMix64 rng(11);
  SampleMap map = random_sample_map(16, 16, 8, 8, 0.5, rng);
  Image fg = random_image(16, 16, rng);
  Image bg = random_image(16, 16, rng);
  Image out = composite(fg, map, bg);

  SUBCASE("per-pixel selection matches the direct oracle") {
    for (std::size_t pix = 0; pix < map.texel.size(); ++pix)
      for (int c = 0; c < 3; ++c) {
        double expected = map.covered(pix) ? fg.rgb[pix * 3 + c] : bg.rgb[pix * 3 + c];
        CHECK(out.rgb[pix * 3 + c] == expected);
      }
  }

  SUBCASE("empty coverage returns the background exactly") {
    SampleMap empty(16, 16, 8, 8);
    CHECK(composite(fg, empty, bg).rgb == bg.rgb);
  }

  SUBCASE("full coverage returns the foreground exactly") {
    SampleMap full(16, 16, 8, 8);
    for (auto& t : full.texel) t = 0;
    CHECK(composite(fg, full, bg).rgb == fg.rgb);
  }

  SUBCASE("dimension mismatch is rejected") {
    Image small(8, 8);
    CHECK_THROWS_AS(composite(small, map, bg), std::invalid_argument);
  }
}

TEST_CASE("backprop_to_texture accumulates per-texel sums") {
  SUBCASE("zero upstream gradient yields an empty touched set") {
    SplitMix64 rng(3);
    SampleMap map = random_sample_map(16, 16, 8, 8, 0.7, rng);
    Image zeros(16, 16);
    GradField field = backprop_to_texture(zeros, map);
    CHECK(field.touched.empty());
    for (double v : field.data) CHECK(v == 0.0);
  }

  SUBCASE("two pixels hitting one texel sum their gradients") {
    SampleMap map(2, 1, 4, 4);
    map.texel[0] = 5;
    map.texel[1] = 5;
    Image grad(2, 1);
    grad.at(0, 0, 0) = 0.25;
    grad.at(1, 0, 0) = 0.5;
    GradField field = backprop_to_texture(grad, map);
    CHECK(field.at(5, 0) == 0.75);
    CHECK(field.touched == std::vector<std::uint32_t>{5});
  }

  SUBCASE("random scatter matches the brute-force oracle") {
    SplitMix64 rng(17);
    SampleMap map = random_sample_map(32, 32, 16, 16, 0.6, rng);
    Image grad = random_image(32, 32, rng);
    GradField field = backprop_to_texture(grad, map);
    std::vector<double> expected = oracle::scatter_gradients(grad, map);
    REQUIRE(field.data.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      CHECK(field.data[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    for (std::uint32_t t : field.touched) CHECK(field.nonzero_at(t));
  }
}

TEST_CASE("rasterize is deterministic") {
  Mesh car = load_obj(test::car_obj());
  CameraPose pose = make_pose(123, 25, 8, 60, 96, 96);
  SampleMap a = rasterize(car, pose, 64, 64);
  SampleMap b = rasterize(car, pose, 64, 64);
  CHECK(a.texel == b.texel);
  CHECK(a.depth == b.depth);
}

TEST_CASE("gradient heatmap export records the normalization range") {
  GradField field(4, 4);
  field.at(0, 0) = -2.0;
  field.at(5, 0) = 3.0;
  field.recompute_touched();
  auto dir = test::scratch_dir("raster");
  std::string path = (dir / "heat.ppm").string();
  save_gradfield_heatmap(field, 0, path);
  std::string content = test::read_file(path);
  CHECK(content.find("# min=-2 max=3") != std::string::npos);
  CHECK(content.substr(0, 2) == "P6");
}
