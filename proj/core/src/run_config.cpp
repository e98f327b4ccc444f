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

#include "camotex/run_config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace camotex {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key));
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::string list_to_string(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(v[i]);
  }
  return out;
}

std::string list_to_string(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void apply_override(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "mesh") c.mesh = value;
  else if (key == "texture_w") c.texture_w = static_cast<int>(parse_long(value, key));
  else if (key == "texture_h") c.texture_h = static_cast<int>(parse_long(value, key));
  else if (key == "mask") c.mask = value;
  else if (key == "out") c.out = value;
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_long(value, key));
  else if (key == "surrogate_seed") c.surrogate_seed = static_cast<std::uint64_t>(parse_long(value, key));
  else if (key == "threads") c.threads = static_cast<int>(parse_long(value, key));
  else if (key == "lr") c.lr = parse_double(value, key);
  else if (key == "epochs") c.epochs = static_cast<int>(parse_long(value, key));
  else if (key == "k") c.k = static_cast<int>(parse_long(value, key));
  else if (key == "tau") c.tau = parse_double(value, key);
  else if (key == "enable_ngc") c.enable_ngc = parse_bool(value, key);
  else if (key == "enable_lpgd") c.enable_lpgd = parse_bool(value, key);
  else if (key == "augment_brightness") c.augment_brightness = parse_bool(value, key);
  else if (key == "lpgd_eps_rel") c.lpgd_eps_rel = parse_double(value, key);
  else if (key == "lpgd_diagnostics") c.lpgd_diagnostics = parse_bool(value, key);
  else if (key == "checkpoint_every") c.checkpoint_every = static_cast<int>(parse_long(value, key));
  else if (key == "debug_coverage") c.debug_coverage = parse_bool(value, key);
  else if (key == "elevations") c.elevations = parse_list(value, key);
  else if (key == "azimuth_step") c.azimuth_step = parse_double(value, key);
  else if (key == "distances") c.distances = parse_list(value, key);
  else if (key == "fov") c.fov = parse_double(value, key);
  else if (key == "image_w") c.image_w = static_cast<int>(parse_long(value, key));
  else if (key == "image_h") c.image_h = static_cast<int>(parse_long(value, key));
  else if (key == "background") c.background = value;
  else if (key == "texture_in") c.texture_in = value;
  else if (key == "render_az") c.render_az = parse_double(value, key);
  else if (key == "render_el") c.render_el = parse_double(value, key);
  else if (key == "render_dist") c.render_dist = parse_double(value, key);
  else if (key == "render_grid") c.render_grid = parse_bool(value, key);
  else if (key == "ablate_sweep") c.ablate_sweep = value;
  else if (key == "ablate_taus") c.ablate_taus = parse_list(value, key);
  else if (key == "ablate_ks") {
    c.ablate_ks.clear();
    for (double d : parse_list(value, key)) c.ablate_ks.push_back(static_cast<int>(d));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream out;
  out << "mesh = " << c.mesh << "\n";
  out << "texture_w = " << c.texture_w << "\n";
  out << "texture_h = " << c.texture_h << "\n";
  out << "mask = " << c.mask << "\n";
  out << "out = " << c.out << "\n";
  out << "seed = " << c.seed << "\n";
  out << "surrogate_seed = " << c.surrogate_seed << "\n";
  out << "threads = " << c.threads << "\n";
  out << "lr = " << fmt_double(c.lr) << "\n";
  out << "epochs = " << c.epochs << "\n";
  out << "k = " << c.k << "\n";
  out << "tau = " << fmt_double(c.tau) << "\n";
  out << "enable_ngc = " << (c.enable_ngc ? "true" : "false") << "\n";
  out << "enable_lpgd = " << (c.enable_lpgd ? "true" : "false") << "\n";
  out << "augment_brightness = " << (c.augment_brightness ? "true" : "false") << "\n";
  out << "lpgd_eps_rel = " << fmt_double(c.lpgd_eps_rel) << "\n";
  out << "lpgd_diagnostics = " << (c.lpgd_diagnostics ? "true" : "false") << "\n";
  out << "checkpoint_every = " << c.checkpoint_every << "\n";
  out << "debug_coverage = " << (c.debug_coverage ? "true" : "false") << "\n";
  out << "elevations = " << list_to_string(c.elevations) << "\n";
  out << "azimuth_step = " << fmt_double(c.azimuth_step) << "\n";
  out << "distances = " << list_to_string(c.distances) << "\n";
  out << "fov = " << fmt_double(c.fov) << "\n";
  out << "image_w = " << c.image_w << "\n";
  out << "image_h = " << c.image_h << "\n";
  out << "background = " << c.background << "\n";
  out << "texture_in = " << c.texture_in << "\n";
  out << "render_az = " << fmt_double(c.render_az) << "\n";
  out << "render_el = " << fmt_double(c.render_el) << "\n";
  out << "render_dist = " << fmt_double(c.render_dist) << "\n";
  out << "render_grid = " << (c.render_grid ? "true" : "false") << "\n";
  out << "ablate_sweep = " << c.ablate_sweep << "\n";
  out << "ablate_taus = " << list_to_string(c.ablate_taus) << "\n";
  out << "ablate_ks = " << list_to_string(c.ablate_ks) << "\n";
  return out.str();
}

void validate(const RunConfig& c, bool need_texture_in) {
  if (c.mesh.empty()) throw ConfigError("config field 'mesh' is required");
  if (!std::filesystem::exists(c.mesh))
    throw ConfigError("config field 'mesh': file not found: " + c.mesh);
  if (c.mask != "all" && !std::filesystem::exists(c.mask))
    throw ConfigError("config field 'mask': file not found: " + c.mask);
  if (need_texture_in) {
    if (c.texture_in.empty())
      throw ConfigError("config field 'texture_in' is required for this command");
    if (!std::filesystem::exists(c.texture_in))
      throw ConfigError("config field 'texture_in': file not found: " + c.texture_in);
  }
  if (c.texture_w < 1 || c.texture_h < 1)
    throw ConfigError("config fields 'texture_w'/'texture_h' must be positive");
  if (!(c.lr > 0.0)) throw ConfigError("config field 'lr' must be positive");
  if (c.epochs < 1) throw ConfigError("config field 'epochs' must be at least 1");
  if (c.k < 1) throw ConfigError("config field 'k' must be at least 1");
  if (c.tau < 0.0) throw ConfigError("config field 'tau' must be nonnegative");
  if (c.threads < 1) throw ConfigError("config field 'threads' must be at least 1");
  if (c.elevations.empty()) throw ConfigError("config field 'elevations' is empty");
  if (c.distances.empty()) throw ConfigError("config field 'distances' is empty");
  if (c.ablate_sweep != "quartet" && c.ablate_sweep != "tau" && c.ablate_sweep != "k")
    throw ConfigError("config field 'ablate_sweep' must be quartet, tau, or k");
  // Surface background/grid spec problems at config time, not mid-run.
  try {
    parse_background_spec(c.background);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field 'background': ") + e.what());
  }
  if (parse_background_spec(c.background).kind == BackgroundSpec::Kind::File &&
      !std::filesystem::exists(c.background))
    throw ConfigError("config field 'background': file not found: " + c.background);
  try {
    pose_grid(to_pose_grid(c), c.fov, c.image_w, c.image_h);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid pose grid: ") + e.what());
  }
}

PoseGrid to_pose_grid(const RunConfig& c) {
  return PoseGrid{c.elevations, c.azimuth_step, c.distances};
}

TrainConfig to_train_config(const RunConfig& c) {
  TrainConfig t;
  t.lr = c.lr;
  t.epochs = c.epochs;
  t.k = c.k;
  t.tau = c.tau;
  t.enable_ngc = c.enable_ngc;
  t.enable_lpgd = c.enable_lpgd;
  t.seed = c.seed;
  t.grid = to_pose_grid(c);
  t.fov_deg = c.fov;
  t.image_w = c.image_w;
  t.image_h = c.image_h;
  t.background = parse_background_spec(c.background);
  t.augment_brightness = c.augment_brightness;
  t.threads = c.threads;
  t.lpgd_eps_rel = c.lpgd_eps_rel;
  t.lpgd_diagnostics = c.lpgd_diagnostics;
  t.checkpoint_every = c.checkpoint_every;
  return t;
}

std::uint64_t config_hash(const RunConfig& c) {
  std::string text = serialize(c);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : text) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace camotex
