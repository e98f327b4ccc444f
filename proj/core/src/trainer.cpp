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

#include "camotex/trainer.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "camotex/ngc.hpp"
#include "camotex/rasterizer.hpp"
#include "camotex/rng.hpp"

namespace camotex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ViewResult {
  ViewGrad vg;
  double t_fb = 0.0;
  double t_ngc = 0.0;
  std::size_t coverage_pre = 0;
  std::size_t coverage_post = 0;
};

// Renders one view and carries its gradient back to texture space.
ViewResult process_view(const Texture& texture, const Mesh& mesh,
                        const Surrogate& surrogate, const CameraPose& pose,
                        const TrainConfig& config, const Image& background,
                        int step, int view_index) {
  ViewResult r;
  auto t0 = Clock::now();

  SampleMap map = rasterize(mesh, pose, texture.width, texture.height);
  Image img = composite(shade(map, texture), map, background);

  double jitter = 1.0;
  std::vector<std::uint8_t> clamped;
  if (config.augment_brightness) {
    jitter = brightness_factor(config.seed, step, view_index);
    clamped.assign(img.rgb.size(), 0);
    for (std::size_t i = 0; i < img.rgb.size(); ++i) {
      double v = img.rgb[i] * jitter;
      if (v > 1.0) {
        v = 1.0;
        clamped[i] = 1;
      }
      img.rgb[i] = v;
    }
  }

  auto [score, cache] = surrogate.forward(img);
  r.vg.loss = suppression_loss(score);
  Image grad_img = surrogate.backward(cache);
  if (config.augment_brightness) {
    for (std::size_t i = 0; i < grad_img.rgb.size(); ++i)
      grad_img.rgb[i] = clamped[i] ? 0.0 : grad_img.rgb[i] * jitter;
  }

  GradField field = backprop_to_texture(grad_img, map);
  apply_mask(field, texture.mask);
  r.coverage_pre = field.touched.size();
  r.t_fb = seconds_since(t0);

  if (config.enable_ngc) {
    auto t1 = Clock::now();
    field = calibrate(field, texture.mask, config.tau);
    r.t_ngc = seconds_since(t1);
  }
  r.coverage_post = field.touched.size();
  r.vg.grad = std::move(field);
  r.vg.view_index = view_index;
  return r;
}

GradField plain_mean(const std::vector<ViewGrad>& batch) {
  GradField sum(batch[0].grad.width, batch[0].grad.height);
  for (const ViewGrad& v : batch) axpy_into(1.0, v.grad, sum);
  double inv_k = 1.0 / static_cast<double>(batch.size());
  for (double& v : sum.data) v *= inv_k;
  sum.recompute_touched();
  return sum;
}

void validate_train_config(const TrainConfig& config, std::size_t pose_count) {
  if (config.epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (config.k < 1) throw std::invalid_argument("minibatch size must be at least 1");
  if (!(config.lr > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (config.tau < 0.0) throw std::invalid_argument("search radius must be nonnegative");
  if (pose_count == 0) throw std::invalid_argument("pose grid is empty");
  if (static_cast<std::size_t>(config.k) > pose_count)
    throw std::invalid_argument("minibatch size exceeds pose count");
}

}  // namespace

double brightness_factor(std::uint64_t seed, int step, int view) {
  SplitMix64 g(mix_seed(seed, /*stream=*/0xB417,
                        static_cast<std::uint64_t>(step) * 131071u +
                            static_cast<std::uint64_t>(view)));
  return g.next_range(0.7, 1.3);
}

StepMetrics train_step(Texture& texture, const Mesh& mesh,
                       const Surrogate& surrogate,
                       std::span<const CameraPose> batch_poses,
                       const TrainConfig& config, AdamState& adam,
                       const Image& background, int step, int epoch,
                       LpgdDiagRow* diag) {
  if (batch_poses.empty()) throw std::invalid_argument("empty minibatch");

  int k = static_cast<int>(batch_poses.size());
  std::vector<ViewResult> results(k);

  int workers = std::clamp(config.threads, 1, k);
  if (workers == 1) {
    for (int i = 0; i < k; ++i)
      results[i] = process_view(texture, mesh, surrogate, batch_poses[i], config,
                                background, step, i);
  } else {
    // Views are independent; the texture is read-shared here and written
    // only after the join.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < k; i += workers)
          results[i] = process_view(texture, mesh, surrogate, batch_poses[i],
                                    config, background, step, i);
      });
    for (auto& th : pool) th.join();
  }

  StepMetrics m;
  m.step = step;
  m.epoch = epoch;
  std::vector<ViewGrad> batch;
  batch.reserve(k);
  for (ViewResult& r : results) {
    m.view_losses.push_back(r.vg.loss);
    m.mean_loss += r.vg.loss;
    m.t_forward_backward += r.t_fb;
    m.t_ngc += r.t_ngc;
    m.coverage_pre += static_cast<double>(r.coverage_pre);
    m.coverage_post += static_cast<double>(r.coverage_post);
    batch.push_back(std::move(r.vg));
  }
  m.mean_loss /= k;
  m.coverage_pre /= k;
  m.coverage_post /= k;

  GradField update;
  if (config.enable_lpgd) {
    auto t0 = Clock::now();
    if (diag != nullptr) {
      // Expanded composition so the diagnostics can see the orthogonalized
      // fields; matches decorrelate() exactly.
      double mean_sq = 0.0;
      for (const ViewGrad& v : batch) mean_sq += squared_norm(v.grad);
      mean_sq /= batch.size();
      std::vector<ViewGrad> ordered = sort_by_loss(std::move(batch));
      std::vector<const GradField*> pre_ptrs;
      for (const ViewGrad& v : ordered) pre_ptrs.push_back(&v.grad);
      diag->step = step;
      for (const ViewGrad& v : ordered) diag->losses.push_back(v.loss);
      diag->pre_cosines = pairwise_cosines(pre_ptrs);
      std::vector<GradField> ortho =
          orthogonalize(ordered, config.lpgd_eps_rel * mean_sq);
      std::vector<const GradField*> post_ptrs;
      for (const GradField& f : ortho) post_ptrs.push_back(&f);
      diag->post_cosines = pairwise_cosines(post_ptrs);
      update = aggregate(ortho, k);
    } else {
      update = decorrelate(std::move(batch), LpgdConfig{k, config.lpgd_eps_rel});
    }
    m.t_lpgd = seconds_since(t0);
  } else {
    update = plain_mean(batch);
  }

  m.grad_norm = std::sqrt(squared_norm(update));
  adam.apply(texture, update, AdamConfig{config.lr});
  return m;
}

TrainResult train(const Mesh& mesh, const Surrogate& surrogate,
                  const TrainConfig& config, Texture initial,
                  const CheckpointFn& checkpoint) {
  std::vector<CameraPose> poses =
      pose_grid(config.grid, config.fov_deg, config.image_w, config.image_h);
  validate_train_config(config, poses.size());

  TrainResult result;
  result.texture = std::move(initial);
  AdamState adam(result.texture.trainable.size());
  Image background = make_background(config.background, config.image_w, config.image_h);

  int steps_per_epoch = static_cast<int>(poses.size()) / config.k;
  int step = 0;
  std::vector<std::uint32_t> order(poses.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    // Fresh seeded shuffle per epoch; incomplete trailing batches are dropped.
    SplitMix64 rng(mix_seed(config.seed, /*stream=*/0x5E9, epoch));
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.next_below(i)]);

    for (int s = 0; s < steps_per_epoch; ++s) {
      std::vector<CameraPose> batch;
      batch.reserve(config.k);
      for (int j = 0; j < config.k; ++j) batch.push_back(poses[order[s * config.k + j]]);

      ++step;
      LpgdDiagRow diag;
      LpgdDiagRow* diag_ptr =
          config.lpgd_diagnostics && config.enable_lpgd ? &diag : nullptr;
      result.log.push_back(train_step(result.texture, mesh, surrogate, batch,
                                      config, adam, background, step, epoch,
                                      diag_ptr));
      if (diag_ptr != nullptr) result.lpgd_diag.push_back(std::move(diag));
      if (checkpoint && config.checkpoint_every > 0 &&
          step % config.checkpoint_every == 0)
        checkpoint(step, result.texture);
    }
  }
  return result;
}

std::vector<CoverageRow> coverage_report(const Mesh& mesh, const Texture& texture,
                                         const std::vector<CameraPose>& poses,
                                         double tau) {
  if (poses.empty()) throw std::invalid_argument("coverage report needs poses");

  std::map<double, std::vector<const CameraPose*>> by_distance;
  for (const CameraPose& p : poses) by_distance[p.distance_m].push_back(&p);
  if (by_distance.size() < 2)
    throw std::invalid_argument("coverage report needs at least 2 distinct distances");

  double trainable_count = static_cast<double>(texture.trainable.size());
  std::vector<CoverageRow> rows;
  for (const auto& [distance, group] : by_distance) {
    CoverageRow row;
    row.distance_m = distance;
    for (const CameraPose* pose : group) {
      SampleMap map = rasterize(mesh, *pose, texture.width, texture.height);
      // Unit gradients on the sampled trainable texels; the propagation
      // footprint is purely geometric, so any nonzero value works.
      GradField field(texture.width, texture.height);
      for (std::uint32_t t : map.sampled_texels()) {
        if (!texture.mask[t]) continue;
        field.at(t, 0) = 1.0;
        field.touched.push_back(t);
      }
      row.mean_sampled += static_cast<double>(field.touched.size());
      GradField extended = calibrate(field, texture.mask, tau);
      row.mean_extended += static_cast<double>(extended.touched.size());
    }
    row.mean_sampled /= static_cast<double>(group.size());
    row.mean_extended /= static_cast<double>(group.size());
    row.sampled_frac = row.mean_sampled / trainable_count;
    row.extended_frac = row.mean_extended / trainable_count;
    rows.push_back(row);
  }
  return rows;
}

double mean_suppression_score(const Surrogate& surrogate, const Mesh& mesh,
                              const Texture& texture,
                              const std::vector<CameraPose>& poses,
                              const BackgroundSpec& background) {
  std::vector<PoseScore> rows =
      detection_score_sweep(surrogate, mesh, texture, poses, background);
  double sum = 0.0;
  for (const PoseScore& r : rows) sum += r.score;
  return sum / static_cast<double>(rows.size());
}

}  // namespace camotex
