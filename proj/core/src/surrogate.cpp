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

#include "camotex/surrogate.hpp"

#include <cmath>
#include <stdexcept>

#include "camotex/background.hpp"
#include "camotex/rasterizer.hpp"
#include "camotex/rng.hpp"

namespace camotex {

namespace {
constexpr int kCIn = 3;
}

Surrogate::Surrogate(std::uint64_t seed) : seed_(seed) {
  // Unit normals scaled by 1/sqrt(fan_in), drawn in a fixed order so the
  // same seed always yields bit-identical weights.
  SplitMix64 rng(mix_seed(seed, /*stream=*/0xC0817));
  w1_.resize(static_cast<std::size_t>(kC1) * kK1 * kK1 * kCIn);
  w2_.resize(static_cast<std::size_t>(kC2) * kK2 * kK2 * kC1);
  double s1 = 1.0 / std::sqrt(static_cast<double>(kK1 * kK1 * kCIn));  // 1/sqrt(75)
  double s2 = 1.0 / std::sqrt(static_cast<double>(kK2 * kK2 * kC1));   // 1/sqrt(72)
  for (double& w : w1_) w = rng.next_normal() * s1;
  for (double& w : w2_) w = rng.next_normal() * s2;
}

std::pair<double, ForwardCache> Surrogate::forward(const Image& image) const {
  int footprint = kK1 + kK2 - 1;
  if (image.width < footprint || image.height < footprint)
    throw std::invalid_argument("image smaller than the surrogate receptive field");

  ForwardCache cache;
  cache.in_w = image.width;
  cache.in_h = image.height;
  cache.w1 = image.width - kK1 + 1;
  cache.h1 = image.height - kK1 + 1;
  cache.w2 = cache.w1 - kK2 + 1;
  cache.h2 = cache.h1 - kK2 + 1;
  cache.pre1.assign(static_cast<std::size_t>(cache.w1) * cache.h1 * kC1, 0.0);
  cache.act1.assign(cache.pre1.size(), 0.0);
  cache.pre2.assign(static_cast<std::size_t>(cache.w2) * cache.h2 * kC2, 0.0);
  cache.act2.assign(cache.pre2.size(), 0.0);

  // conv1 + relu; activations interleaved [y][x][f].
  for (int y = 0; y < cache.h1; ++y)
    for (int x = 0; x < cache.w1; ++x) {
      std::size_t o = (static_cast<std::size_t>(y) * cache.w1 + x) * kC1;
      for (int f = 0; f < kC1; ++f) {
        const double* w = &w1_[static_cast<std::size_t>(f) * kK1 * kK1 * kCIn];
        double acc = 0.0;
        for (int ky = 0; ky < kK1; ++ky) {
          const double* row =
              &image.rgb[(static_cast<std::size_t>(y + ky) * image.width + x) * kCIn];
          const double* wr = &w[static_cast<std::size_t>(ky) * kK1 * kCIn];
          for (int i = 0; i < kK1 * kCIn; ++i) acc += wr[i] * row[i];
        }
        cache.pre1[o + f] = acc;
        cache.act1[o + f] = acc > 0.0 ? acc : 0.0;
      }
    }

  // conv2 + relu.
  double total = 0.0;
  for (int y = 0; y < cache.h2; ++y)
    for (int x = 0; x < cache.w2; ++x) {
      std::size_t o = (static_cast<std::size_t>(y) * cache.w2 + x) * kC2;
      for (int g = 0; g < kC2; ++g) {
        const double* w = &w2_[static_cast<std::size_t>(g) * kK2 * kK2 * kC1];
        double acc = 0.0;
        for (int ky = 0; ky < kK2; ++ky) {
          const double* row =
              &cache.act1[(static_cast<std::size_t>(y + ky) * cache.w1 + x) * kC1];
          const double* wr = &w[static_cast<std::size_t>(ky) * kK2 * kC1];
          for (int i = 0; i < kK2 * kC1; ++i) acc += wr[i] * row[i];
        }
        cache.pre2[o + g] = acc;
        double a = acc > 0.0 ? acc : 0.0;
        cache.act2[o + g] = a;
        total += a;
      }
    }

  double score = total / (static_cast<double>(cache.w2) * cache.h2 * kC2);
  return {score, std::move(cache)};
}

Image Surrogate::backward(const ForwardCache& cache) const {
  if (cache.in_w <= 0 || cache.in_h <= 0)
    throw std::invalid_argument("backward called with an empty cache");

  // d loss / d act2 is uniform; relu passes it where pre2 > 0 (subgradient 0
  // at 0).
  double g_out = 1.0 / (static_cast<double>(cache.w2) * cache.h2 * kC2);

  std::vector<double> d_act1(cache.act1.size(), 0.0);
  for (int y = 0; y < cache.h2; ++y)
    for (int x = 0; x < cache.w2; ++x) {
      std::size_t o = (static_cast<std::size_t>(y) * cache.w2 + x) * kC2;
      for (int g = 0; g < kC2; ++g) {
        if (!(cache.pre2[o + g] > 0.0)) continue;
        const double* w = &w2_[static_cast<std::size_t>(g) * kK2 * kK2 * kC1];
        for (int ky = 0; ky < kK2; ++ky) {
          double* row = &d_act1[(static_cast<std::size_t>(y + ky) * cache.w1 + x) * kC1];
          const double* wr = &w[static_cast<std::size_t>(ky) * kK2 * kC1];
          for (int i = 0; i < kK2 * kC1; ++i) row[i] += wr[i] * g_out;
        }
      }
    }

  Image grad(cache.in_w, cache.in_h);
  for (int y = 0; y < cache.h1; ++y)
    for (int x = 0; x < cache.w1; ++x) {
      std::size_t o = (static_cast<std::size_t>(y) * cache.w1 + x) * kC1;
      for (int f = 0; f < kC1; ++f) {
        if (!(cache.pre1[o + f] > 0.0)) continue;
        double d = d_act1[o + f];
        if (d == 0.0) continue;
        const double* w = &w1_[static_cast<std::size_t>(f) * kK1 * kK1 * kCIn];
        for (int ky = 0; ky < kK1; ++ky) {
          double* row = &grad.rgb[(static_cast<std::size_t>(y + ky) * cache.in_w + x) * kCIn];
          const double* wr = &w[static_cast<std::size_t>(ky) * kK1 * kCIn];
          for (int i = 0; i < kK1 * kCIn; ++i) row[i] += wr[i] * d;
        }
      }
    }
  return grad;
}

std::vector<PoseScore> detection_score_sweep(const Surrogate& surrogate,
                                             const Mesh& mesh,
                                             const Texture& texture,
                                             const std::vector<CameraPose>& poses,
                                             const BackgroundSpec& background) {
  if (poses.empty()) throw std::invalid_argument("score sweep needs at least one pose");

  std::vector<PoseScore> rows;
  rows.reserve(poses.size());
  Image bg;
  for (const CameraPose& pose : poses) {
    if (bg.width != pose.image_w || bg.height != pose.image_h)
      bg = make_background(background, pose.image_w, pose.image_h);
    SampleMap map = rasterize(mesh, pose, texture.width, texture.height);
    Image img = composite(shade(map, texture), map, bg);
    auto [score, cache] = surrogate.forward(img);
    rows.push_back({pose, score});
  }
  return rows;
}

}  // namespace camotex
