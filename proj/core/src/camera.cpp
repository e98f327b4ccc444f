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

#include "camotex/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace camotex {

CameraBasis camera_basis(const CameraPose& pose) {
  CameraBasis b;
  b.eye = pose.eye();
  b.forward = normalized(-b.eye);
  // World-Z up; at the top-down pose the look direction is parallel to Z,
  // so fall back to world-X.
  Vec3 up0{0.0, 0.0, 1.0};
  if (std::abs(dot(b.forward, up0)) > 1.0 - 1e-9) up0 = {1.0, 0.0, 0.0};
  b.right = normalized(cross(b.forward, up0));
  b.up = cross(b.right, b.forward);
  return b;
}

CameraPose make_pose(double azimuth_deg, double elevation_deg, double distance_m,
                     double fov_deg, int image_w, int image_h) {
  if (!(distance_m > 0.0))
    throw std::invalid_argument("camera distance must be positive");
  if (elevation_deg < 0.0 || elevation_deg > 90.0)
    throw std::invalid_argument("elevation must lie in [0, 90] degrees");
  if (!(fov_deg > 0.0) || !(fov_deg < 180.0))
    throw std::invalid_argument("fov must lie in (0, 180) degrees");
  if (image_w < 16 || image_h < 16)
    throw std::invalid_argument("image dimensions must be at least 16");

  double az = std::fmod(azimuth_deg, 360.0);
  if (az < 0.0) az += 360.0;
  return CameraPose{az, elevation_deg, distance_m, fov_deg, image_w, image_h};
}

std::vector<CameraPose> pose_grid(const PoseGrid& grid, double fov_deg,
                                  int image_w, int image_h) {
  if (!(grid.azimuth_step_deg > 0.0))
    throw std::invalid_argument("azimuth step must be positive");
  double n_az_f = 360.0 / grid.azimuth_step_deg;
  long n_az = std::lround(n_az_f);
  if (n_az < 1 || std::abs(n_az_f - static_cast<double>(n_az)) > 1e-9)
    throw std::invalid_argument("azimuth step must divide 360");
  for (double d : grid.distances_m)
    if (!(d > 0.0)) throw std::invalid_argument("grid distances must be positive");

  std::vector<CameraPose> poses;
  poses.reserve(grid.distances_m.size() * grid.elevations_deg.size() * n_az);
  for (double d : grid.distances_m)
    for (double el : grid.elevations_deg)
      for (long i = 0; i < n_az; ++i)
        poses.push_back(make_pose(static_cast<double>(i) * grid.azimuth_step_deg,
                                  el, d, fov_deg, image_w, image_h));
  return poses;
}

std::vector<CameraPose> sample_minibatch(const std::vector<CameraPose>& poses,
                                         int k, SplitMix64& rng) {
  if (k < 1) throw std::invalid_argument("minibatch size must be at least 1");
  if (static_cast<std::size_t>(k) > poses.size())
    throw std::invalid_argument("minibatch size exceeds pose count");

  // Partial Fisher-Yates over an index array; integer-only, so identical on
  // every platform.
  std::vector<std::uint32_t> idx(poses.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::uint32_t>(i);
  std::vector<CameraPose> batch;
  batch.reserve(k);
  for (int i = 0; i < k; ++i) {
    std::size_t j = i + rng.next_below(idx.size() - i);
    std::swap(idx[i], idx[j]);
    batch.push_back(poses[idx[i]]);
  }
  return batch;
}

}  // namespace camotex
