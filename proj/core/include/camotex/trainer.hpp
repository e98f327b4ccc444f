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
#include <functional>
#include <span>
#include <vector>

#include "camotex/adam.hpp"
#include "camotex/background.hpp"
#include "camotex/camera.hpp"
#include "camotex/lpgd.hpp"
#include "camotex/mesh.hpp"
#include "camotex/surrogate.hpp"
#include "camotex/texture.hpp"

namespace camotex {

// Training loop: per step, render a k-view minibatch, backpropagate each
// view to texture space, calibrate per view (optional), decorrelate the
// batch (optional, plain mean otherwise), then one Adam step on the
// trainable texels.
struct TrainConfig {
  double lr = 0.1;
  int epochs = 3;   // >= 1
  int k = 8;        // minibatch size >= 1
  double tau = 8.0; // calibration radius, texels
  bool enable_ngc = true;
  bool enable_lpgd = true;
  std::uint64_t seed = 1;

  PoseGrid grid{{0.0, 15.0, 30.0, 45.0}, 12.0, {5.0, 10.0, 15.0}};
  double fov_deg = 60.0;
  int image_w = 256;
  int image_h = 256;
  BackgroundSpec background;

  bool augment_brightness = false;
  int threads = 1;
  double lpgd_eps_rel = 1e-12;
  bool lpgd_diagnostics = false;
  int checkpoint_every = 0;  // steps between checkpoint callbacks, 0 = never
};

struct StepMetrics {
  int step = 0;
  int epoch = 0;
  double mean_loss = 0.0;
  std::vector<double> view_losses;
  double grad_norm = 0.0;
  double coverage_pre = 0.0;   // mean touched texels per view before calibration
  double coverage_post = 0.0;  // and after
  double t_forward_backward = 0.0;  // seconds, summed over the batch
  double t_ngc = 0.0;
  double t_lpgd = 0.0;
};

struct LpgdDiagRow {
  int step = 0;
  std::vector<double> losses;
  std::vector<double> pre_cosines;   // upper triangle, flattened
  std::vector<double> post_cosines;
};

struct TrainResult {
  Texture texture;
  std::vector<StepMetrics> log;
  std::vector<LpgdDiagRow> lpgd_diag;
};

// Deterministic per-view brightness multiplier in [0.7, 1.3].
double brightness_factor(std::uint64_t seed, int step, int view);

// One optimization step over batch_poses. The background must match the
// configured image size. Thread-count does not change results: views are
// independent and reductions run in a fixed order.
StepMetrics train_step(Texture& texture, const Mesh& mesh,
                       const Surrogate& surrogate,
                       std::span<const CameraPose> batch_poses,
                       const TrainConfig& config, AdamState& adam,
                       const Image& background, int step, int epoch,
                       LpgdDiagRow* diag = nullptr);

// Full run: epochs * (pose_count / k) steps, poses reshuffled per epoch with
// a seed derived from config.seed. Throws std::invalid_argument on an
// invalid config (epochs < 1, k < 1, k > pose count, lr <= 0).
using CheckpointFn = std::function<void(int step, const Texture&)>;
TrainResult train(const Mesh& mesh, const Surrogate& surrogate,
                  const TrainConfig& config, Texture initial,
                  const CheckpointFn& checkpoint = nullptr);

// Sampling-density report: per distance, how many trainable texels one view
// touches before and after calibration with the given radius. Requires poses
// spanning at least 2 distinct distances.
struct CoverageRow {
  double distance_m = 0.0;
  double mean_sampled = 0.0;   // |sampled trainable texels| averaged over poses
  double mean_extended = 0.0;  // touched after calibration
  double sampled_frac = 0.0;   // fraction of the trainable region
  double extended_frac = 0.0;
};
std::vector<CoverageRow> coverage_report(const Mesh& mesh, const Texture& texture,
                                         const std::vector<CameraPose>& poses,
                                         double tau);

// Mean objectness over a pose set, rendering with the given background.
double mean_suppression_score(const Surrogate& surrogate, const Mesh& mesh,
                              const Texture& texture,
                              const std::vector<CameraPose>& poses,
                              const BackgroundSpec& background);

}  // namespace camotex
