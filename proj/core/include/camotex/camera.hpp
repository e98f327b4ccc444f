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

#include <vector>

#include "camotex/geometry.hpp"
#include "camotex/rng.hpp"

namespace camotex {

// One viewpoint on the orbit sphere around the object origin. Pinhole camera
// with symmetric vertical fov and square pixels, up-vector world Z (world X
// at the degenerate top-down elevation).
struct CameraPose {
  double azimuth_deg = 0.0;    // [0, 360)
  double elevation_deg = 0.0;  // [0, 90]
  double distance_m = 10.0;    // > 0
  double fov_deg = 60.0;       // (0, 180), vertical
  int image_w = 256;           // >= 16
  int image_h = 256;           // >= 16

  Vec3 eye() const {
    double a = azimuth_deg * kDegToRad;
    double e = elevation_deg * kDegToRad;
    double c = std::cos(e);
    return Vec3{c * std::cos(a), c * std::sin(a), std::sin(e)} * distance_m;
  }
};

// Orthonormal camera frame; forward points from the eye to the origin.
struct CameraBasis {
  Vec3 eye;
  Vec3 right;
  Vec3 up;
  Vec3 forward;
};

CameraBasis camera_basis(const CameraPose& pose);

// Validates field ranges and normalizes azimuth into [0, 360).
// Throws std::invalid_argument on violations.
CameraPose make_pose(double azimuth_deg, double elevation_deg, double distance_m,
                     double fov_deg, int image_w, int image_h);

// Cartesian product sweep: azimuths are {0, step, ..., 360-step}.
struct PoseGrid {
  std::vector<double> elevations_deg;
  double azimuth_step_deg = 2.0;  // must divide 360
  std::vector<double> distances_m;
};

// Deterministic enumeration: distance-major, then elevation, then azimuth,
// in the order the lists were given.
std::vector<CameraPose> pose_grid(const PoseGrid& grid, double fov_deg,
                                  int image_w, int image_h);

// Draws k poses uniformly without replacement. Index sampling is
// integer-only, so a fixed seed gives the same batch on every platform.
// Throws std::invalid_argument if k < 1 or k > poses.size().
std::vector<CameraPose> sample_minibatch(const std::vector<CameraPose>& poses,
                                         int k, SplitMix64& rng);

}  // namespace camotex
