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
#include <stdexcept>
#include <string>
#include <vector>

#include "camotex/trainer.hpp"

namespace camotex {

// Usage or configuration problem; maps to exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The full run description: everything train needs plus file locations and
// subcommand-specific options. Serializes to a plain-text key = value file
// and parses back losslessly; the resolved form is echoed next to every
// run's outputs.
struct RunConfig {
  // Inputs and outputs.
  std::string mesh;           // OBJ path, required
  int texture_w = 256;
  int texture_h = 256;
  std::string mask = "all";   // "all" or a PPM path
  std::string out = "out";
  std::uint64_t seed = 1;
  std::uint64_t surrogate_seed = 42;  // frozen scorer identity, fixed across runs
  int threads = 1;

  // Optimization.
  double lr = 0.1;
  int epochs = 3;
  int k = 8;
  double tau = 8.0;
  bool enable_ngc = true;
  bool enable_lpgd = true;
  bool augment_brightness = false;
  double lpgd_eps_rel = 1e-12;
  bool lpgd_diagnostics = false;
  int checkpoint_every = 0;   // 0 = no checkpoints
  bool debug_coverage = false;

  // Viewpoints.
  std::vector<double> elevations{0.0, 15.0, 30.0, 45.0};
  double azimuth_step = 12.0;
  std::vector<double> distances{5.0, 10.0, 15.0};
  double fov = 60.0;
  int image_w = 256;
  int image_h = 256;
  std::string background = "gradient";

  // render / eval.
  std::string texture_in;
  double render_az = 45.0;
  double render_el = 15.0;
  double render_dist = 10.0;
  bool render_grid = false;

  // ablate.
  std::string ablate_sweep = "quartet";  // quartet | tau | k
  std::vector<double> ablate_taus{0.0, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<int> ablate_ks{1, 5, 10, 20, 40};
};

// Parses a key = value file ('#' starts a comment). Unknown keys and
// malformed values raise ConfigError naming the key.
RunConfig load_run_config(const std::string& path);

// Single key = value override, same keys as the file format.
void apply_override(RunConfig& config, const std::string& key,
                    const std::string& value);

// Full-precision round-trippable text form, fixed key order.
std::string serialize(const RunConfig& config);

// Checks field invariants and that referenced paths exist. `need_texture_in`
// is set by subcommands that consume a texture file.
void validate(const RunConfig& config, bool need_texture_in = false);

TrainConfig to_train_config(const RunConfig& config);
PoseGrid to_pose_grid(const RunConfig& config);

// FNV-1a over the serialized form; recorded in checkpoint sidecars.
std::uint64_t config_hash(const RunConfig& config);

// printf("%.17g") formatting shared by the CSV writers so floats round-trip.
std::string fmt_double(double v);

}  // namespace camotex
