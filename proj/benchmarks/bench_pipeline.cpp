#include <benchmark/benchmark.h>

#include "respsim/extract.hpp"
#include "respsim/noise.hpp"
#include "respsim/scene.hpp"

namespace {

using namespace respsim;

const scene::TorsoScene& default_scene() {
  static const scene::TorsoScene s;
  return s;
}

const DepthFrame& rest_frame() {
  static const DepthFrame f = [] {
    const auto& s = default_scene();
    return scene::render_frame(scene::pose_mesh(s, scene::build_torso(s), 0.5), s.intrinsics,
                               static_cast<float>(s.background_depth_m()));
  }();
  return f;
}

void BM_RenderFrame(benchmark::State& state) {
  const auto& s = default_scene();
  const auto mesh = scene::build_torso(s);
  double v = 0.0;
  for (auto _ : state) {
    auto f = scene::render_frame(scene::pose_mesh(s, mesh, v), s.intrinsics, 1.45f);
    benchmark::DoNotOptimize(f.depth.data());
    v = v > 0.9 ? 0.0 : v + 0.1;
  }
}
BENCHMARK(BM_RenderFrame)->Unit(benchmark::kMillisecond);

void BM_ApplyGaussian(benchmark::State& state) {
  std::uint32_t frame = 0;
  for (auto _ : state) {
    auto f = noise::apply_gaussian(rest_frame(), 0.05, CounterStream(1, 0, frame++));
    benchmark::DoNotOptimize(f.depth.data());
  }
}
BENCHMARK(BM_ApplyGaussian)->Unit(benchmark::kMillisecond);

void BM_EdgeAoe(benchmark::State& state) {
  const double sigma = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto m = noise::edge_aoe(rest_frame(), sigma, 0.05);
    benchmark::DoNotOptimize(m.values.data());
  }
}
BENCHMARK(BM_EdgeAoe)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_RoiMean(benchmark::State& state) {
  auto roi = extract::default_roi(default_scene());
  roi.scale = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(extract::roi_mean(rest_frame(), roi));
}
BENCHMARK(BM_RoiMean)->Arg(100)->Arg(20)->Arg(5)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
