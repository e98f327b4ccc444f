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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "camotex/commands.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  long seed = -1;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Run config file (key = value)");
  cmd->add_option("--set", args.overrides,
                  "Override any config key, e.g. --set k=16 (repeatable)");
  cmd->add_option("--seed", args.seed, "Override the master seed");
  cmd->add_option("--out", args.out, "Override the output directory");
  cmd->add_option("--threads", args.threads, "Per-view worker threads");
}

// Builds the resolved config: file first, then flag overrides (flags win).
camotex::RunConfig resolve(const CommonArgs& args) {
  camotex::RunConfig config;
  if (!args.config_path.empty())
    config = camotex::load_run_config(args.config_path);
  for (const std::string& kv : args.overrides) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw camotex::ConfigError("--set expects key=value, got '" + kv + "'");
    camotex::apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.out.empty()) config.out = args.out;
  if (args.threads > 0) config.threads = args.threads;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-view texture optimization against a frozen surrogate scorer"};
  app.require_subcommand(1);

  CommonArgs attack_args, ablate_args, render_args, eval_args;

  CLI::App* attack = app.add_subcommand("attack", "optimize a texture end to end");
  add_common(attack, attack_args);

  CLI::App* ablate = app.add_subcommand(
      "ablate", "component quartet / tau sweep / batch-size sweep with a shared seed");
  std::string sweep;
  ablate->add_option("--sweep", sweep, "quartet | tau | k");
  add_common(ablate, ablate_args);

  CLI::App* render = app.add_subcommand("render", "composite a texture at given poses");
  std::string texture_in_render;
  double az = 45.0, el = 15.0, dist = 10.0;
  bool grid = false;
  render->add_option("--texture", texture_in_render, "Texture PPM to render");
  render->add_option("--az", az, "Azimuth (degrees)");
  render->add_option("--el", el, "Elevation (degrees)");
  render->add_option("--dist", dist, "Distance (meters)");
  render->add_flag("--grid", grid, "Render every pose of the configured grid");
  add_common(render, render_args);

  CLI::App* eval = app.add_subcommand("eval", "score every grid pose with the surrogate");
  std::string texture_in_eval;
  eval->add_option("--texture", texture_in_eval,
                   "Texture PPM to score (default: uniform gray)");
  add_common(eval, eval_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (attack->parsed()) return camotex::cmd_attack(resolve(attack_args));
    if (ablate->parsed()) {
      camotex::RunConfig config = resolve(ablate_args);
      if (!sweep.empty()) config.ablate_sweep = sweep;
      return camotex::cmd_ablate(config);
    }
    if (render->parsed()) {
      camotex::RunConfig config = resolve(render_args);
      if (!texture_in_render.empty()) config.texture_in = texture_in_render;
      if (render->count("--az")) config.render_az = az;
      if (render->count("--el")) config.render_el = el;
      if (render->count("--dist")) config.render_dist = dist;
      if (grid) config.render_grid = true;
      return camotex::cmd_render(config);
    }
    if (eval->parsed()) {
      camotex::RunConfig config = resolve(eval_args);
      if (!texture_in_eval.empty()) config.texture_in = texture_in_eval;
      return camotex::cmd_eval(config);
    }
  } catch (const camotex::ConfigError& e) {
    std::cerr << "camotex: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "camotex: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
