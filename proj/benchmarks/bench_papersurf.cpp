#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "papersurf/balls.hpp"
#include "papersurf/horseshoe.hpp"
#include "papersurf/llc.hpp"
#include "papersurf/measure.hpp"
#include "papersurf/quotient.hpp"
#include "papersurf/scheme_io.hpp"

using namespace papersurf;

namespace {

const PairingScheme& example() {
  static const PairingScheme s = builtin_scheme("example-1.3");
  return s;
}

}  // namespace

static void BM_ChainGraphBuild(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    ChainGraph g(example(), Metric::max, h);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_ChainGraphBuild)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_QuotientDistance(benchmark::State& state) {
  const ChainGraph g(example(), Metric::max, 1.0 / static_cast<double>(state.range(0)));
  const SurfacePoint a{0, {0.2, 0.7}}, b{0, {0.9, 0.1}};
  for (auto _ : state) benchmark::DoNotOptimize(g.distance(a, b).value);
}
BENCHMARK(BM_QuotientDistance)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_DecomposeAccumulationBall(benchmark::State& state) {
  const auto& s = example();
  const SurfacePoint acc = s.surface_point(s.singular_points().front());
  const double r = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto d = decompose_ball(s, acc, r);
    benchmark::DoNotOptimize(d.pieces.data());
  }
}
BENCHMARK(BM_DecomposeAccumulationBall)->DenseRange(1, 9, 2)->Unit(benchmark::kMicrosecond);

static void BM_BallArea(benchmark::State& state) {
  const auto& s = example();
  const SurfacePoint c{0, {0.9, 0.3}};
  for (auto _ : state) benchmark::DoNotOptimize(ball_area(s, c, 0.3).area);
}
BENCHMARK(BM_BallArea)->Unit(benchmark::kMicrosecond);

static void BM_RegularityScan(benchmark::State& state) {
  const auto& s = example();
  const auto centers = sample_centers(s, static_cast<std::size_t>(state.range(0)), 1);
  const auto radii = log_radii(scale_constants(s).r0, 12);
  for (auto _ : state) benchmark::DoNotOptimize(regularity_scan(s, centers, radii).ratio_max);
}
BENCHMARK(BM_RegularityScan)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_GridBuild(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    const auto g = build_grid(example(), h);
    benchmark::DoNotOptimize(g.size());
  }
}
BENCHMARK(BM_GridBuild)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_HorseshoeExperiment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(horseshoe_area_experiment(24).fit.slope);
}
BENCHMARK(BM_HorseshoeExperiment)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
