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

#include "camotex/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "camotex/ngc.hpp"
#include "camotex/rasterizer.hpp"
#include "camotex/rng.hpp"

namespace camotex {

namespace fs = std::filesystem;

namespace {

// Seed streams, one per consumer of the master seed.
constexpr std::uint64_t kTextureStream = 0x7E4;

std::string join_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ";";
    out += fmt_double(v[i]);
  }
  return out;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

void write_config_echo(const RunConfig& config, const fs::path& dir) {
  write_text(dir / "config_resolved.txt", serialize(config));
}

void append_run_log(const fs::path& dir, const std::string& message) {
  std::ofstream out(dir / "run.log", std::ios::app);
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
  out << stamp << "Z " << message << "\n";
}

void write_metrics_csv(const std::vector<StepMetrics>& log, const fs::path& dir) {
  // Deterministic per-step metrics; wall-clock columns live in timing.csv so
  // repeated runs stay byte-identical.
  std::ostringstream m;
  m << "step,epoch,mean_loss,view_losses,grad_norm,coverage_pre,coverage_post\n";
  for (const StepMetrics& s : log)
    m << s.step << "," << s.epoch << "," << fmt_double(s.mean_loss) << ","
      << join_list(s.view_losses) << "," << fmt_double(s.grad_norm) << ","
      << fmt_double(s.coverage_pre) << "," << fmt_double(s.coverage_post) << "\n";
  write_text(dir / "metrics.csv", m.str());

  std::ostringstream t;
  t << "step,t_forward_backward,t_ngc,t_lpgd\n";
  for (const StepMetrics& s : log)
    t << s.step << "," << fmt_double(s.t_forward_backward) << ","
      << fmt_double(s.t_ngc) << "," << fmt_double(s.t_lpgd) << "\n";
  write_text(dir / "timing.csv", t.str());
}

void write_lpgd_diag_csv(const std::vector<LpgdDiagRow>& rows, const fs::path& dir) {
  std::ostringstream out;
  out << "step,losses,pre_cosines,post_cosines\n";
  for (const LpgdDiagRow& r : rows)
    out << r.step << "," << join_list(r.losses) << "," << join_list(r.pre_cosines)
        << "," << join_list(r.post_cosines) << "\n";
  write_text(dir / "lpgd_diag.csv", out.str());
}

Texture load_or_make_texture(const RunConfig& config) {
  std::vector<std::uint8_t> mask =
      config.mask == "all" ? mask_all(config.texture_w, config.texture_h)
                           : load_mask(config.mask, config.texture_w, config.texture_h);
  return make_initial_texture(config.texture_w, config.texture_h, std::move(mask),
                              mix_seed(config.seed, kTextureStream));
}

std::string pose_file_name(const CameraPose& pose) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "az%g_el%g_d%g.ppm", pose.azimuth_deg,
                pose.elevation_deg, pose.distance_m);
  return buf;
}

Image render_pose(const Mesh& mesh, const Texture& texture, const CameraPose& pose,
                  const BackgroundSpec& background) {
  SampleMap map = rasterize(mesh, pose, texture.width, texture.height);
  Image bg = make_background(background, pose.image_w, pose.image_h);
  return composite(shade(map, texture), map, bg);
}

// The fixed comparison viewpoint used for ablation strips.
CameraPose canonical_pose(const RunConfig& config) {
  return make_pose(45.0, 15.0, 10.0, config.fov, config.image_w, config.image_h);
}

void dump_coverage_masks(const Mesh& mesh, const Texture& texture,
                         const CameraPose& pose, double tau, const fs::path& dir) {
  SampleMap map = rasterize(mesh, pose, texture.width, texture.height);
  GradField field(texture.width, texture.height);
  for (std::uint32_t t : map.sampled_texels()) {
    if (!texture.mask[t]) continue;
    field.at(t, 0) = 1.0;
    field.touched.push_back(t);
  }
  save_touched_mask(field, (dir / "ngc_pre.ppm").string());
  save_touched_mask(calibrate(field, texture.mask, tau), (dir / "ngc_post.ppm").string());
}

int run_guarded(const RunConfig& config, bool need_texture_in,
                const std::function<void(const fs::path&)>& body) {
  fs::path dir;
  try {
    validate(config, need_texture_in);
    dir = config.out;
    fs::create_directories(dir);
  } catch (const ConfigError& e) {
    std::cerr << "camotex: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "camotex: " << e.what() << "\n";
    return 1;
  }
  try {
    body(dir);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "camotex: " << e.what() << "\n";
    append_run_log(dir, std::string("failed: ") + e.what());
    return 2;
  }
}

}  // namespace

int cmd_attack(const RunConfig& config) {
  return run_guarded(config, false, [&](const fs::path& dir) {
    append_run_log(dir, "attack started");
    write_config_echo(config, dir);

    Mesh mesh = load_obj(config.mesh);
    Surrogate surrogate(config.surrogate_seed);
    Texture texture = load_or_make_texture(config);
    TrainConfig train_config = to_train_config(config);
    std::vector<CameraPose> eval_poses =
        pose_grid(train_config.grid, config.fov, config.image_w, config.image_h);

    double initial_score = mean_suppression_score(surrogate, mesh, texture,
                                                  eval_poses, train_config.background);

    fs::path ckpt_dir = dir / "checkpoints";
    CheckpointFn checkpoint;
    if (config.checkpoint_every > 0) {
      fs::create_directories(ckpt_dir);
      std::uint64_t hash = config_hash(config);
      checkpoint = [&, hash](int step, const Texture& tex) {
        char name[48];
        std::snprintf(name, sizeof name, "step_%06d", step);
        save_ppm(texture_to_image(tex), (ckpt_dir / (std::string(name) + ".ppm")).string());
        char sidecar[96];
        std::snprintf(sidecar, sizeof sidecar, "step = %d\nconfig_hash = %016llx\n",
                      step, static_cast<unsigned long long>(hash));
        write_text(ckpt_dir / (std::string(name) + ".txt"), sidecar);
      };
    }

    TrainResult result = train(mesh, surrogate, train_config, std::move(texture),
                               checkpoint);

    double final_score = mean_suppression_score(surrogate, mesh, result.texture,
                                                eval_poses, train_config.background);

    save_ppm(texture_to_image(result.texture), (dir / "texture_final.ppm").string());
    write_metrics_csv(result.log, dir);
    if (config.lpgd_diagnostics && config.enable_lpgd)
      write_lpgd_diag_csv(result.lpgd_diag, dir);
    if (config.debug_coverage)
      dump_coverage_masks(mesh, result.texture, eval_poses.front(), config.tau, dir);

    std::ostringstream summary;
    summary << "metric = surrogate suppression score (frozen scorer; not a detector AP)\n";
    summary << "eval_poses = " << eval_poses.size() << "\n";
    summary << "initial_mean_score = " << fmt_double(initial_score) << "\n";
    summary << "final_mean_score = " << fmt_double(final_score) << "\n";
    write_text(dir / "summary.txt", summary.str());

    append_run_log(dir, "attack finished");
    std::cout << "initial mean score " << initial_score << " -> final "
              << final_score << " (" << eval_poses.size() << " poses)\n";
  });
}

int cmd_ablate(const RunConfig& config) {
  return run_guarded(config, false, [&](const fs::path& dir) {
    append_run_log(dir, "ablate started (" + config.ablate_sweep + ")");
    write_config_echo(config, dir);

    Mesh mesh = load_obj(config.mesh);
    Surrogate surrogate(config.surrogate_seed);
    std::vector<CameraPose> eval_poses =
        pose_grid(to_pose_grid(config), config.fov, config.image_w, config.image_h);

    struct Variant {
      std::string id;
      TrainConfig train;
    };
    std::vector<Variant> variants;
    TrainConfig base = to_train_config(config);
    if (config.ablate_sweep == "quartet") {
      auto add = [&](const std::string& id, bool ngc, bool lpgd) {
        TrainConfig t = base;
        t.enable_ngc = ngc;
        t.enable_lpgd = lpgd;
        variants.push_back({id, t});
      };
      add("baseline", false, false);
      add("ngc", true, false);
      add("lpgd", false, true);
      add("ngc_lpgd", true, true);
    } else if (config.ablate_sweep == "tau") {
      for (double tau : config.ablate_taus) {
        TrainConfig t = base;
        t.enable_ngc = true;
        t.enable_lpgd = false;  // isolate the calibration effect
        t.tau = tau;
        char id[32];
        std::snprintf(id, sizeof id, "tau_%g", tau);
        variants.push_back({id, t});
      }
    } else {  // "k"
      for (int k : config.ablate_ks) {
        TrainConfig t = base;
        t.enable_ngc = false;  // isolate the decorrelation effect
        t.enable_lpgd = true;
        t.k = k;
        variants.push_back({"k_" + std::to_string(k), t});
      }
    }

    std::ostringstream csv;
    csv << "config_id,final_score\n";
    std::vector<Image> tiles;
    for (const Variant& variant : variants) {
      Texture texture = load_or_make_texture(config);
      TrainResult result =
          train(mesh, surrogate, variant.train, std::move(texture));
      double score = mean_suppression_score(surrogate, mesh, result.texture,
                                            eval_poses, variant.train.background);
      csv << variant.id << "," << fmt_double(score) << "\n";
      save_ppm(texture_to_image(result.texture),
               (dir / ("texture_" + variant.id + ".ppm")).string());
      tiles.push_back(render_pose(mesh, result.texture, canonical_pose(config),
                                  variant.train.background));
      append_run_log(dir, variant.id + " done, score " + fmt_double(score));
      std::cout << variant.id << ": final mean score " << score << "\n";
    }

    write_text(dir / "ablate.csv", csv.str());
    save_ppm(hconcat(tiles), (dir / "ablate_strip.ppm").string());
    append_run_log(dir, "ablate finished");
  });
}

int cmd_render(const RunConfig& config) {
  return run_guarded(config, true, [&](const fs::path& dir) {
    write_config_echo(config, dir);
    Mesh mesh = load_obj(config.mesh);
    Image tex_img = load_ppm(config.texture_in);
    Texture texture =
        texture_from_image(tex_img, mask_all(tex_img.width, tex_img.height));
    BackgroundSpec background = parse_background_spec(config.background);

    std::vector<CameraPose> poses;
    if (config.render_grid) {
      poses = pose_grid(to_pose_grid(config), config.fov, config.image_w,
                        config.image_h);
    } else {
      poses.push_back(make_pose(config.render_az, config.render_el,
                                config.render_dist, config.fov, config.image_w,
                                config.image_h));
    }
    for (const CameraPose& pose : poses)
      save_ppm(render_pose(mesh, texture, pose, background),
               (dir / pose_file_name(pose)).string());
    std::cout << "wrote " << poses.size() << " image(s) to " << dir << "\n";
  });
}

int cmd_eval(const RunConfig& config) {
  return run_guarded(config, false, [&](const fs::path& dir) {
    write_config_echo(config, dir);
    Mesh mesh = load_obj(config.mesh);
    Surrogate surrogate(config.surrogate_seed);
    BackgroundSpec background = parse_background_spec(config.background);

    Texture texture = [&] {
      if (config.texture_in.empty()) {
        // No texture given: score the untrained uniform-gray reference.
        return Texture(config.texture_w, config.texture_h,
                       mask_all(config.texture_w, config.texture_h));
      }
      if (!fs::exists(config.texture_in))
        throw ConfigError("config field 'texture_in': file not found: " +
                          config.texture_in);
      Image img = load_ppm(config.texture_in);
      return texture_from_image(img, mask_all(img.width, img.height));
    }();

    std::vector<CameraPose> poses =
        pose_grid(to_pose_grid(config), config.fov, config.image_w, config.image_h);
    std::vector<PoseScore> rows =
        detection_score_sweep(surrogate, mesh, texture, poses, background);

    std::ostringstream scores;
    scores << "azimuth_deg,elevation_deg,distance_m,score\n";
    std::map<double, std::pair<double, int>> by_el, by_dist;
    for (const PoseScore& r : rows) {
      scores << fmt_double(r.pose.azimuth_deg) << ","
             << fmt_double(r.pose.elevation_deg) << ","
             << fmt_double(r.pose.distance_m) << "," << fmt_double(r.score) << "\n";
      auto& el = by_el[r.pose.elevation_deg];
      el.first += r.score;
      el.second += 1;
      auto& di = by_dist[r.pose.distance_m];
      di.first += r.score;
      di.second += 1;
    }
    write_text(dir / "scores.csv", scores.str());

    std::ostringstream el_csv;
    el_csv << "elevation_deg,mean_score\n";
    for (const auto& [el, acc] : by_el)
      el_csv << fmt_double(el) << "," << fmt_double(acc.first / acc.second) << "\n";
    write_text(dir / "by_elevation.csv", el_csv.str());

    std::ostringstream dist_csv;
    dist_csv << "distance_m,mean_score\n";
    for (const auto& [d, acc] : by_dist)
      dist_csv << fmt_double(d) << "," << fmt_double(acc.first / acc.second) << "\n";
    write_text(dir / "by_distance.csv", dist_csv.str());

    if (by_dist.size() >= 2) {
      std::vector<CoverageRow> cov = coverage_report(mesh, texture, poses, config.tau);
      std::ostringstream cov_csv;
      cov_csv << "distance_m,mean_sampled,mean_extended,sampled_frac,extended_frac\n";
      for (const CoverageRow& r : cov)
        cov_csv << fmt_double(r.distance_m) << "," << fmt_double(r.mean_sampled)
                << "," << fmt_double(r.mean_extended) << ","
                << fmt_double(r.sampled_frac) << "," << fmt_double(r.extended_frac)
                << "\n";
      write_text(dir / "coverage.csv", cov_csv.str());
    }

    double mean = 0.0;
    for (const PoseScore& r : rows) mean += r.score;
    std::cout << "mean surrogate suppression score over " << rows.size()
              << " poses: " << mean / rows.size() << "\n";
  });
}

}  // namespace camotex
