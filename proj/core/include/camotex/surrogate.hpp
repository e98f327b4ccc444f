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

#include <cstdint>
#include <utility>
#include <vector>

#include "camotex/camera.hpp"
#include "camotex/image.hpp"
#include "camotex/mesh.hpp"
#include "camotex/texture.hpp"

namespace camotex {

struct ForwardCache;

// Frozen two-layer convolutional scorer: a differentiable detector stand-in
// producing one objectness scalar per image, with an exact hand-written
// reverse pass. Valid padding, stride 1, no biases:
//
//   score = mean over positions and channels of
//           relu(conv2_3x3x8(relu(conv1_5x5x3(image))))
//
// Weights are drawn once from a seeded unit normal scaled by 1/sqrt(fan_in)
// and never change.
class Surrogate {
 public:
  explicit Surrogate(std::uint64_t seed);

  // Requires image at least 7x7 (the stacked receptive field); throws
  // std::invalid_argument otherwise.
  std::pair<double, ForwardCache> forward(const Image& image) const;

  // Exact input gradient of suppression_loss(forward(image)). ReLU uses
  // subgradient 0 at 0.
  Image backward(const ForwardCache& cache) const;

  std::uint64_t seed() const { return seed_; }
  const std::vector<double>& conv1_weights() const { return w1_; }
  const std::vector<double>& conv2_weights() const { return w2_; }

  static constexpr int kC1 = 8;  // conv1 output channels
  static constexpr int kC2 = 8;  // conv2 output channels
  static constexpr int kK1 = 5;  // conv1 kernel
  static constexpr int kK2 = 3;  // conv2 kernel

 private:
  std::uint64_t seed_;
  std::vector<double> w1_;  // [f][ky][kx][c_in=3]
  std::vector<double> w2_;  // [g][ky][kx][f=8]
};

// Intermediate activations kept for the reverse pass.
struct ForwardCache {
  int in_w = 0, in_h = 0;
  int w1 = 0, h1 = 0;  // conv1 output dims
  int w2 = 0, h2 = 0;  // conv2 output dims
  std::vector<double> pre1, act1;  // [y][x][f]
  std::vector<double> pre2, act2;  // [y][x][g]
};

// The scalar objective: minimizing it suppresses detection evidence. The map
// is the identity, kept as a named seam so the objective stays swappable.
inline double suppression_loss(double score) { return score; }

struct PoseScore {
  CameraPose pose;
  double score = 0.0;
};

// Renders each pose, composites over the given background, and scores the
// result. Backgrounds are regenerated per image size as needed.
struct BackgroundSpec;
std::vector<PoseScore> detection_score_sweep(const Surrogate& surrogate,
                                             const Mesh& mesh,
                                             const Texture& texture,
                                             const std::vector<CameraPose>& poses,
                                             const BackgroundSpec& background);

}  // namespace camotex
