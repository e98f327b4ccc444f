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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "camotex/commands.hpp"
#include "test_support.hpp"

using namespace camotex;
namespace fs = std::filesystem;

namespace {

RunConfig tiny_run(const fs::path& out) {
  RunConfig c;
  c.mesh = test::car_obj();
  c.texture_w = 16;
  c.texture_h = 16;
  c.out = out.string();
  c.seed = 3;
  c.surrogate_seed = 2;
  c.epochs = 1;
  c.k = 2;
  c.tau = 2.0;
  c.elevations = {0.0, 30.0};
  c.azimuth_step = 90.0;
  c.distances = {8.0};  // 8 poses
  c.image_w = 48;
  c.image_h = 48;
  c.background = "flat:0,0,0";
  return c;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char ch : text) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("run config round-trips through serialization losslessly") {
  RunConfig c = tiny_run("/tmp/x");
  c.lr = 0.017;
  c.tau = 3.75;
  c.distances = {5.0, 7.5, 12.25};
  c.ablate_ks = {1, 5, 40};
  c.lpgd_eps_rel = 3e-13;
  c.background = "gradient:0,0,0,0.5,0.5,0.5";

  auto dir = test::scratch_dir("cli");
  std::string path = test::write_temp(dir, "round.cfg", serialize(c));
  RunConfig parsed = load_run_config(path);
  CHECK(serialize(parsed) == serialize(c));
  CHECK(config_hash(parsed) == config_hash(c));
}

TEST_CASE("config parser reports unknown keys and malformed values") {
  auto dir = test::scratch_dir("cli");
  std::string bad_key = test::write_temp(dir, "bad_key.cfg", "no_such_key = 1\n");
  CHECK_THROWS_AS(load_run_config(bad_key), ConfigError);
  std::string bad_val = test::write_temp(dir, "bad_val.cfg", "epochs = soon\n");
  CHECK_THROWS_AS(load_run_config(bad_val), ConfigError);
  std::string no_eq = test::write_temp(dir, "no_eq.cfg", "epochs 3\n");
  CHECK_THROWS_AS(load_run_config(no_eq), ConfigError);

  // Comments and blank lines are fine.
  std::string ok = test::write_temp(dir, "ok.cfg", "# comment\n\nepochs = 2 # trailing\n");
  CHECK(load_run_config(ok).epochs == 2);
}

TEST_CASE("validation names the missing field") {
  RunConfig c;
  c.mesh = "";
  try {
    validate(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("mesh") != std::string::npos);
  }

  c.mesh = "/nonexistent/car.obj";
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("cmd_attack produces the documented outputs") {
  fs::path out = test::scratch_dir("cli") / "attack_ok";
  fs::remove_all(out);
  RunConfig c = tiny_run(out);
  REQUIRE(cmd_attack(c) == 0);

  CHECK(fs::exists(out / "texture_final.ppm"));
  CHECK(fs::exists(out / "metrics.csv"));
  CHECK(fs::exists(out / "timing.csv"));
  CHECK(fs::exists(out / "summary.txt"));
  CHECK(fs::exists(out / "config_resolved.txt"));

  // The echoed config parses back to the run's resolved settings.
  RunConfig echoed = load_run_config((out / "config_resolved.txt").string());
  CHECK(serialize(echoed) == serialize(c));

  std::string metrics = test::read_file((out / "metrics.csv").string());
  CHECK(count_lines(metrics) == 1 + 4);  // header + 8 poses / k=2 ... 1 epoch
  std::string summary = test::read_file((out / "summary.txt").string());
  CHECK(summary.find("surrogate suppression score") != std::string::npos);
  CHECK(summary.find("initial_mean_score") != std::string::npos);
  CHECK(summary.find("final_mean_score") != std::string::npos);
}

TEST_CASE("cmd_attack rejects a missing mesh with exit code 1") {
  fs::path out = test::scratch_dir("cli") / "attack_bad";
  RunConfig c = tiny_run(out);
  c.mesh = "/nonexistent/mesh.obj";
  CHECK(cmd_attack(c) == 1);
}

TEST_CASE("cmd_attack runtime failures exit with code 2") {
  fs::path out = test::scratch_dir("cli") / "attack_rt";
  auto dir = test::scratch_dir("cli");
  // A file that exists but is not a valid mesh passes validation and fails
  // at load time.
  std::string broken = test::write_temp(dir, "broken.obj", "v 0 0 0\n");
  RunConfig c = tiny_run(out);
  c.mesh = broken;
  CHECK(cmd_attack(c) == 2);
}

TEST_CASE("cmd_attack checkpoints carry the config hash sidecar") {
  fs::path out = test::scratch_dir("cli") / "attack_ckpt";
  fs::remove_all(out);
  RunConfig c = tiny_run(out);
  c.checkpoint_every = 2;
  REQUIRE(cmd_attack(c) == 0);
  CHECK(fs::exists(out / "checkpoints" / "step_000002.ppm"));
  CHECK(fs::exists(out / "checkpoints" / "step_000002.txt"));
  std::string sidecar = test::read_file((out / "checkpoints" / "step_000002.txt").string());
  CHECK(sidecar.find("step = 2") != std::string::npos);
  CHECK(sidecar.find("config_hash = ") != std::string::npos);
}

TEST_CASE("cmd_render writes the pose-pattern file names") {
  fs::path tex_out = test::scratch_dir("cli") / "render_tex";
  fs::remove_all(tex_out);
  RunConfig c = tiny_run(tex_out);
  REQUIRE(cmd_attack(c) == 0);  // produces a texture to render

  fs::path out = test::scratch_dir("cli") / "render_ok";
  fs::remove_all(out);
  RunConfig r = tiny_run(out);
  r.texture_in = (tex_out / "texture_final.ppm").string();
  r.render_az = 45;
  r.render_el = 15;
  r.render_dist = 10;
  REQUIRE(cmd_render(r) == 0);
  CHECK(fs::exists(out / "az45_el15_d10.ppm"));

  SUBCASE("grid flag renders one image per grid pose") {
    fs::path out_grid = test::scratch_dir("cli") / "render_grid";
    fs::remove_all(out_grid);
    RunConfig g = tiny_run(out_grid);
    g.texture_in = (tex_out / "texture_final.ppm").string();
    g.render_grid = true;
    REQUIRE(cmd_render(g) == 0);
    int count = 0;
    for (auto& entry : fs::directory_iterator(out_grid))
      count += entry.path().extension() == ".ppm";
    CHECK(count == 8);  // 2 elevations x 4 azimuths x 1 distance
    CHECK(fs::exists(out_grid / "az90_el30_d8.ppm"));
  }

  SUBCASE("missing texture exits nonzero") {
    RunConfig bad = tiny_run(test::scratch_dir("cli") / "render_bad");
    bad.texture_in = "/nonexistent/tex.ppm";
    CHECK(cmd_render(bad) == 1);
  }
}

TEST_CASE("cmd_eval emits per-pose scores plus aggregate tables") {
  fs::path out = test::scratch_dir("cli") / "eval_ok";
  fs::remove_all(out);
  RunConfig c = tiny_run(out);
  c.elevations = {0.0, 15.0, 30.0};
  c.azimuth_step = 45.0;  // 8 azimuths
  c.distances = {5.0, 10.0};
  REQUIRE(cmd_eval(c) == 0);

  std::string scores = test::read_file((out / "scores.csv").string());
  CHECK(count_lines(scores) == 1 + 3 * 8 * 2);
  std::string by_el = test::read_file((out / "by_elevation.csv").string());
  CHECK(count_lines(by_el) == 1 + 3);
  std::string by_d = test::read_file((out / "by_distance.csv").string());
  CHECK(count_lines(by_d) == 1 + 2);
  CHECK(scores.rfind("azimuth_deg,elevation_deg,distance_m,score", 0) == 0);

  // Grids spanning >= 2 distances also get the sampling-coverage table.
  std::string cov = test::read_file((out / "coverage.csv").string());
  CHECK(count_lines(cov) == 1 + 2);
  CHECK(cov.rfind("distance_m,mean_sampled,mean_extended", 0) == 0);

  SUBCASE("an empty grid is rejected with exit 1") {
    RunConfig bad = c;
    bad.elevations.clear();
    CHECK(cmd_eval(bad) == 1);
  }

  SUBCASE("reruns are byte-identical") {
    fs::path out2 = test::scratch_dir("cli") / "eval_again";
    fs::remove_all(out2);
    RunConfig again = c;
    again.out = out2.string();
    REQUIRE(cmd_eval(again) == 0);
    for (const char* f : {"scores.csv", "by_elevation.csv", "by_distance.csv",
                          "coverage.csv"})
      CHECK(test::read_file((out / f).string()) ==
            test::read_file((out2 / f).string()));
  }
}

TEST_CASE("cmd_ablate quartet emits four rows and a strip image") {
  fs::path out = test::scratch_dir("cli") / "ablate_ok";
  fs::remove_all(out);
  RunConfig c = tiny_run(out);
  c.ablate_sweep = "quartet";
  REQUIRE(cmd_ablate(c) == 0);

  std::string csv = test::read_file((out / "ablate.csv").string());
  CHECK(count_lines(csv) == 1 + 4);
  CHECK(csv.find("baseline,") != std::string::npos);
  CHECK(csv.find("ngc,") != std::string::npos);
  CHECK(csv.find("lpgd,") != std::string::npos);
  CHECK(csv.find("ngc_lpgd,") != std::string::npos);
  CHECK(fs::exists(out / "ablate_strip.ppm"));
  CHECK(fs::exists(out / "texture_baseline.ppm"));

  SUBCASE("tau sweep emits one row per radius") {
    fs::path out_tau = test::scratch_dir("cli") / "ablate_tau";
    fs::remove_all(out_tau);
    RunConfig t = tiny_run(out_tau);
    t.ablate_sweep = "tau";
    t.ablate_taus = {0.0, 1.0, 2.0, 4.0, 8.0, 16.0};
    REQUIRE(cmd_ablate(t) == 0);
    std::string tau_csv = test::read_file((out_tau / "ablate.csv").string());
    CHECK(count_lines(tau_csv) == 1 + 6);
    CHECK(tau_csv.find("tau_0,") != std::string::npos);
    CHECK(tau_csv.find("tau_16,") != std::string::npos);
  }

  SUBCASE("k sweep emits one row per batch size") {
    fs::path out_k = test::scratch_dir("cli") / "ablate_k";
    fs::remove_all(out_k);
    RunConfig kcfg = tiny_run(out_k);
    kcfg.ablate_sweep = "k";
    kcfg.ablate_ks = {1, 2, 4};  // grid has 8 poses
    REQUIRE(cmd_ablate(kcfg) == 0);
    std::string k_csv = test::read_file((out_k / "ablate.csv").string());
    CHECK(count_lines(k_csv) == 1 + 3);
    CHECK(k_csv.find("k_1,") != std::string::npos);
    CHECK(k_csv.find("k_4,") != std::string::npos);
  }
}

TEST_CASE("lpgd diagnostics CSV appears when requested") {
  fs::path out = test::scratch_dir("cli") / "attack_diag";
  fs::remove_all(out);
  RunConfig c = tiny_run(out);
  c.lpgd_diagnostics = true;
  REQUIRE(cmd_attack(c) == 0);
  std::string diag = test::read_file((out / "lpgd_diag.csv").string());
  CHECK(diag.rfind("step,losses,pre_cosines,post_cosines", 0) == 0);
  CHECK(count_lines(diag) == 1 + 4);
}

TEST_CASE("debug coverage masks are dumped on request") {
  fs::path out = test::scratch_dir("cli") / "attack_cov";
  fs::remove_all(out);
  RunConfig c = tiny_run(out);
  c.debug_coverage = true;
  REQUIRE(cmd_attack(c) == 0);
  CHECK(fs::exists(out / "ngc_pre.ppm"));
  CHECK(fs::exists(out / "ngc_post.ppm"));
}
