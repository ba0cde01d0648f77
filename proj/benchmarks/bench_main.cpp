// Microbenchmarks for the matching and post-processing hot loops.
// Inputs are one rendered desk frame pair at 320x240.

#include <benchmark/benchmark.h>

#include "stereogt/census.hpp"
#include "stereogt/cost_volume.hpp"
#include "stereogt/postprocess.hpp"
#include "stereogt/rectification.hpp"
#include "stereogt/sgm.hpp"
#include "stereogt/spacetime.hpp"
#include "stereogt/synthetic.hpp"
#include "stereogt/warp.hpp"

using namespace stereogt;

namespace {

constexpr int kDmax = 48;

const RenderedScene& frame() {
  static const RenderedScene r = SyntheticScene(desk_scene(3)).render_scene(0);
  return r;
}

const CostVolume& volume() {
  static const CostVolume v = [] {
    const CensusWindow w;
    return build_cost_volume(census_transform(frame().left, w), census_transform(frame().right, w), kDmax, w.bits());
  }();
  return v;
}

void BM_Census(benchmark::State& state) {
  const CensusWindow w;
  const ImageF& img = frame().left;  // render outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(census_transform(img, w));
}
BENCHMARK(BM_Census)->Unit(benchmark::kMillisecond);

void BM_CostVolume(benchmark::State& state) {
  const CensusWindow w;
  const CensusImage l = census_transform(frame().left, w), r = census_transform(frame().right, w);
  for (auto _ : state) benchmark::DoNotOptimize(build_cost_volume(l, r, kDmax, w.bits()));
}
BENCHMARK(BM_CostVolume)->Unit(benchmark::kMillisecond);

void BM_Sgm(benchmark::State& state) {
  MatcherParams mp;
  mp.paths = static_cast<int>(state.range(0));
  const CostVolume& v = volume();
  for (auto _ : state) benchmark::DoNotOptimize(sgm_aggregate(v, mp.sgm()));
}
BENCHMARK(BM_Sgm)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Bilateral(benchmark::State& state) {
  const DisparityMap d = frame().gt.disp_left;
  BilateralParams p;
  p.window = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bilateral_smooth(d, frame().left, p));
}
BENCHMARK(BM_Bilateral)->Arg(9)->Arg(35)->Unit(benchmark::kMillisecond);

void BM_RectifyWarp(benchmark::State& state) {
  const SyntheticScene scene(desk_scene(3));
  const PinholeCamera raw = scene.spec().calib.cam_L;
  const WarpField field = rectification_warp(raw, scene.lr().ref);
  for (auto _ : state) benchmark::DoNotOptimize(warp_image(frame().left, field, Interp::bilinear));
}
BENCHMARK(BM_RectifyWarp)->Unit(benchmark::kMillisecond);

}  // namespace

// packaged libbenchmark_main.a is LTO bytecode only, so main lives here
BENCHMARK_MAIN();
