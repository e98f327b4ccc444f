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

#include <benchmark/benchmark.h>

#include "camotex/lpgd.hpp"
#include "camotex/rasterizer.hpp"
#include "camotex/rng.hpp"
#include "camotex/trainer.hpp"

#ifndef CAMOTEX_ASSET_DIR
#define CAMOTEX_ASSET_DIR "assets"
#endif

using namespace camotex;

namespace {

const Mesh& car() {
  static Mesh mesh = load_obj(std::string(CAMOTEX_ASSET_DIR) + "/car.obj");
  return mesh;
}

GradField random_dense_field(int w, int h, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GradField f(w, h);
  for (double& v : f.data) v = rng.next_normal();
  f.recompute_touched();
  return f;
}

}  // namespace

static void BM_Rasterize(benchmark::State& state) {
  int im = static_cast<int>(state.range(0));
  CameraPose pose = make_pose(30, 15, 10, 60, im, im);
  for (auto _ : state) {
    SampleMap map = rasterize(car(), pose, 64, 64);
    benchmark::DoNotOptimize(map.covered_count());
  }
}
BENCHMARK(BM_Rasterize)->Arg(64)->Arg(128)->Arg(256);

static void BM_SurrogateForwardBackward(benchmark::State& state) {
  int im = static_cast<int>(state.range(0));
  Surrogate surrogate(2);
  SplitMix64 rng(1);
  Image img(im, im);
  for (double& v : img.rgb) v = rng.next_double();
  for (auto _ : state) {
    auto [score, cache] = surrogate.forward(img);
    Image grad = surrogate.backward(cache);
    benchmark::DoNotOptimize(grad.rgb.data());
    benchmark::DoNotOptimize(score);
  }
}
BENCHMARK(BM_SurrogateForwardBackward)->Arg(48)->Arg(64)->Arg(128);

// Decorrelation cost against batch size at a fixed 64^2 texture. Classical
// Gram-Schmidt projects each gradient against every earlier output, so the
// curve grows quadratically in k at fixed dimension.
static void BM_DecorrelateVsK(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  std::vector<ViewGrad> batch;
  for (int i = 0; i < k; ++i)
    batch.push_back({1.0 - 0.01 * i, random_dense_field(64, 64, i + 1), i});
  LpgdConfig config{k, 1e-12};
  for (auto _ : state) {
    std::vector<ViewGrad> copy = batch;
    GradField out = decorrelate(std::move(copy), config);
    benchmark::DoNotOptimize(out.data.data());
  }
  state.SetComplexityN(k);
}
BENCHMARK(BM_DecorrelateVsK)->DenseRange(5, 40, 5)->Complexity();

// Linear in the flattened gradient length at fixed k.
static void BM_DecorrelateVsDim(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  const int k = 8;
  std::vector<ViewGrad> batch;
  for (int i = 0; i < k; ++i)
    batch.push_back({1.0 - 0.01 * i, random_dense_field(side, side, i + 1), i});
  LpgdConfig config{k, 1e-12};
  for (auto _ : state) {
    std::vector<ViewGrad> copy = batch;
    GradField out = decorrelate(std::move(copy), config);
    benchmark::DoNotOptimize(out.data.data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(side) * side);
}
BENCHMARK(BM_DecorrelateVsDim)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Complexity();

static void BM_TrainStep(benchmark::State& state) {
  Surrogate surrogate(2);
  TrainConfig config;
  config.k = 8;
  config.tau = 2.0;
  config.image_w = 64;
  config.image_h = 64;
  config.background = parse_background_spec("flat:0,0,0");
  config.enable_ngc = state.range(0) & 1;
  config.enable_lpgd = state.range(0) & 2;

  Texture tex = make_initial_texture(64, 64, mask_all(64, 64), 1);
  AdamState adam(tex.trainable.size());
  Image bg = make_background(config.background, 64, 64);
  std::vector<CameraPose> poses;
  for (int i = 0; i < 8; ++i) poses.push_back(make_pose(45.0 * i, 15, 10, 60, 64, 64));

  int step = 0;
  for (auto _ : state) {
    StepMetrics m = train_step(tex, car(), surrogate, poses, config, adam, bg,
                               ++step, 1);
    benchmark::DoNotOptimize(m.mean_loss);
  }
}
BENCHMARK(BM_TrainStep)
    ->Arg(0)   // plain averaging
    ->Arg(1)   // + calibration
    ->Arg(2)   // + decorrelation
    ->Arg(3);  // both

BENCHMARK_MAIN();
