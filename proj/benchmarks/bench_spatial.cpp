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

#include "camotex/kdtree.hpp"
#include "camotex/ngc.hpp"
#include "camotex/rng.hpp"

using namespace camotex;

namespace {

std::vector<TexelPoint> random_points(int n, int extent, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<TexelPoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    int x = static_cast<int>(rng.next_below(extent));
    int y = static_cast<int>(rng.next_below(extent));
    pts.push_back({x, y, static_cast<std::uint32_t>(y) * extent + x});
  }
  return pts;
}

}  // namespace

static void BM_KdTreeBuild(benchmark::State& state) {
  auto pts = random_points(static_cast<int>(state.range(0)), 4096, 1);
  for (auto _ : state) {
    TexelKdTree tree(pts);
    benchmark::DoNotOptimize(tree.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KdTreeBuild)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_KdTreeNearest(benchmark::State& state) {
  auto pts = random_points(static_cast<int>(state.range(0)), 4096, 2);
  TexelKdTree tree(pts);
  SplitMix64 rng(3);
  for (auto _ : state) {
    int qx = static_cast<int>(rng.next_below(4096));
    int qy = static_cast<int>(rng.next_below(4096));
    benchmark::DoNotOptimize(tree.nearest(qx, qy).dist2);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KdTreeNearest)->RangeMultiplier(2)->Range(1 << 10, 1 << 17)->Complexity();

// Propagation over a 64^2 trainable grid from a sparse sampled set, the
// per-view cost added to every training step when calibration is on.
static void BM_Calibrate(benchmark::State& state) {
  const int w = 64, h = 64;
  SplitMix64 rng(4);
  GradField field(w, h);
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
    std::uint32_t t = static_cast<std::uint32_t>(rng.next_below(w * h));
    field.at(t, 0) = rng.next_range(-1.0, 1.0);
  }
  field.recompute_touched();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(w) * h, 1);
  double tau = static_cast<double>(state.range(1));
  for (auto _ : state) {
    GradField out = calibrate(field, mask, tau);
    benchmark::DoNotOptimize(out.touched.size());
  }
}
BENCHMARK(BM_Calibrate)
    ->Args({50, 2})
    ->Args({50, 8})
    ->Args({200, 2})
    ->Args({200, 8})
    ->Args({800, 8});

BENCHMARK_MAIN();
