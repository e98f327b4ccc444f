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

#include <algorithm>

#include "camotex/ngc.hpp"
#include "camotex/rng.hpp"
#include "oracles.hpp"

using namespace camotex;

namespace {

GradField random_sparse_field(int w, int h, int n_touched, SplitMix64& rng) {
  GradField field(w, h);
  std::uint32_t total = static_cast<std::uint32_t>(w) * h;
  for (int i = 0; i < n_touched; ++i) {
    std::uint32_t t = static_cast<std::uint32_t>(rng.next_below(total));
    for (int c = 0; c < 3; ++c) field.at(t, c) = rng.next_range(-1.0, 1.0);
  }
  field.recompute_touched();
  return field;
}

bool fields_identical(const GradField& a, const GradField& b) {
  return a.data == b.data && a.touched == b.touched;
}

}  // namespace

TEST_CASE("tau zero leaves the field unchanged") {
  SplitMix64 rng(1);
  GradField field = random_sparse_field(16, 16, 30, rng);
  GradField out = calibrate(field, std::vector<std::uint8_t>(256, 1), 0.0);
  CHECK(fields_identical(out, field));
}

TEST_CASE("empty touched set is a no-op") {
  GradField field(8, 8);
  GradField out = calibrate(field, std::vector<std::uint8_t>(64, 1), 4.0);
  CHECK(fields_identical(out, field));
}

TEST_CASE("hand-checked 8x8 propagation at tau 2") {
  // Sampled texels at (1,1) and (6,6). (2,2) is sqrt(2) from (1,1), inside
  // the radius; (4,4) is 2*sqrt(2) ~ 2.83 from (6,6) and farther from (1,1),
  // so it stays zero.
  GradField field(8, 8);
  auto id = [](int x, int y) { return static_cast<std::uint32_t>(y * 8 + x); };
  field.at(id(1, 1), 0) = 0.5;
  field.at(id(6, 6), 0) = -0.25;
  field.recompute_touched();

  GradField out = calibrate(field, std::vector<std::uint8_t>(64, 1), 2.0);
  CHECK(out.at(id(1, 1), 0) == 0.5);
  CHECK(out.at(id(6, 6), 0) == -0.25);
  CHECK(out.at(id(2, 2), 0) == 0.5);    // nearest sampled point is (1,1), d=sqrt(2)
  CHECK(out.at(id(4, 4), 0) == 0.0);    // nearest is (6,6) at d=2.83 > 2
  CHECK(out.at(id(1, 3), 0) == 0.5);    // d=2 exactly, boundary included
  CHECK(out.at(id(6, 4), 0) == -0.25);  // d=2 from (6,6)
}

TEST_CASE("sampled texels pass through bitwise") {
  SplitMix64 rng(5);
  GradField field = random_sparse_field(32, 32, 60, rng);
  GradField out = calibrate(field, std::vector<std::uint8_t>(1024, 1), 5.0);
  for (std::uint32_t t : field.touched)
    for (int c = 0; c < 3; ++c) CHECK(out.at(t, c) == field.at(t, c));
}

TEST_CASE("masked texels never receive gradient") {
  SplitMix64 rng(6);
  std::vector<std::uint8_t> mask(1024, 0);
  for (std::uint32_t t = 0; t < 1024; ++t) mask[t] = (t % 3 != 0);
  GradField field(32, 32);
  for (std::uint32_t t : {37u, 500u, 900u}) {
    if (!mask[t]) continue;
    field.at(t, 1) = 1.0;
  }
  field.recompute_touched();
  GradField out = calibrate(field, mask, 8.0);
  for (std::uint32_t t = 0; t < 1024; ++t)
    if (!mask[t]) CHECK_FALSE(out.nonzero_at(t));
}

TEST_CASE("propagated gradients come from a sampled texel within tau") {
  SplitMix64 rng(7);
  GradField field = random_sparse_field(24, 24, 20, rng);
  std::vector<std::uint8_t> mask(576, 1);
  double tau = 4.0;
  GradField out = calibrate(field, mask, tau);

  std::vector<TexelPoint> sampled = touched_points(field);
  std::vector<std::uint8_t> is_sampled(576, 0);
  for (std::uint32_t t : field.touched) is_sampled[t] = 1;

  for (std::uint32_t t : out.touched) {
    if (is_sampled[t]) continue;
    auto [q, d2] = oracle::linear_scan_nearest(sampled, t % 24, t / 24);
    CHECK(static_cast<double>(d2) <= tau * tau);
    for (int c = 0; c < 3; ++c) CHECK(out.at(t, c) == field.at(q, c));
  }
}

TEST_CASE("touched set grows monotonically with tau") {
  SplitMix64 rng(8);
  GradField field = random_sparse_field(32, 32, 15, rng);
  std::vector<std::uint8_t> mask(1024, 1);
  std::vector<std::uint32_t> previous;
  for (double tau : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    GradField out = calibrate(field, mask, tau);
    CHECK(std::includes(out.touched.begin(), out.touched.end(), previous.begin(),
                        previous.end()));
    previous = out.touched;
  }
}

TEST_CASE("randomized instances match the brute-force oracle exactly") {
  SplitMix64 rng(2025);
  const double taus[] = {1.0, 2.0, 4.0, 8.0, 16.0};
  for (int trial = 0; trial < 60; ++trial) {
    int w = 8 + static_cast<int>(rng.next_below(57));  // up to 64
    int h = 8 + static_cast<int>(rng.next_below(57));
    int n = 1 + static_cast<int>(rng.next_below(200));
    GradField field = random_sparse_field(w, h, n, rng);

    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 1);
    for (auto& m : mask) m = rng.next_below(10) < 8;  // ~80% trainable
    for (std::uint32_t t : field.touched) mask[t] = 1;

    double tau = taus[rng.next_below(5)];
    GradField ours = calibrate(field, mask, tau);
    GradField expected = oracle::brute_force_calibrate(field, mask, tau);
    CHECK(ours.data == expected.data);
    CHECK(ours.touched == expected.touched);
  }
}

TEST_CASE("build_index and nearest answer wrapper queries") {
  GradField field(16, 16);
  field.at(5, 0) = 1.0;
  field.at(200, 2) = -1.0;
  field.recompute_touched();
  TexelKdTree index = build_index(touched_points(field));
  CHECK(index.size() == 2);
  auto hit = nearest(index, 5, 0);
  CHECK(hit.id == 5);
  CHECK(hit.dist2 == 0);
  CHECK_THROWS_AS(build_index({}), std::invalid_argument);
}
