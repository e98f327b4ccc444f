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

#include "camotex/run_config.hpp"

namespace camotex {

// Subcommand entry points. Each returns a process exit code: 0 on success,
// 1 on usage/config errors, 2 on runtime failures; error text goes to
// stderr. All CSV and image outputs are deterministic for a fixed
// config + seed; wall-clock measurements are confined to timing.csv and
// run.log.

// Full optimization run. Writes texture_final.ppm, metrics.csv, timing.csv,
// summary.txt, config_resolved.txt (and checkpoints/ if enabled) under
// config.out.
int cmd_attack(const RunConfig& config);

// Component/parameter sweep with a shared seed. Writes ablate.csv (one row
// per configuration) and ablate_strip.ppm (per-config renders at the
// canonical pose az 45, el 15, d 10 side by side).
int cmd_ablate(const RunConfig& config);

// Renders config.texture_in composited over the background, either at the
// single configured pose or across the whole grid (az{A}_el{E}_d{D}.ppm).
int cmd_render(const RunConfig& config);

// Scores every grid pose with the frozen surrogate. Writes scores.csv plus
// by_elevation.csv and by_distance.csv aggregates.
int cmd_eval(const RunConfig& config);

}  // namespace camotex
