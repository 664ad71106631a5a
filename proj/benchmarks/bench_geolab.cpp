#include <benchmark/benchmark.h>

#include "geolab/blochness.hpp"
#include "geolab/ifs_engine.hpp"

using namespace geolab;

namespace {

void BM_KobayashiDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = make_rng(1, 0);
  const CVec z = uniform_in_ball(rng, n, 0.9), w = uniform_in_ball(rng, n, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(kobayashi_distance(z, w));
}
BENCHMARK(BM_KobayashiDistance)->Arg(2)->Arg(3)->Arg(8);

void BM_GeodesicThrough(benchmark::State& state) {
  Rng rng = make_rng(1, 1);
  const BallPoint z(uniform_in_ball(rng, 2, 0.9)), w(uniform_in_ball(rng, 2, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_through(z, w));
}
BENCHMARK(BM_GeodesicThrough);

void BM_LeftInverse(benchmark::State& state) {
  Rng rng = make_rng(1, 2);
  const LempertDevice d = geodesic_through(BallPoint(uniform_in_ball(rng, 3, 0.9)), BallPoint(uniform_in_ball(rng, 3, 0.9)));
  const CVec x = uniform_in_ball(rng, 3, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(d.left_inverse(x));
}
BENCHMARK(BM_LeftInverse);

void BM_PlanarBlochRadius(benchmark::State& state) {
  EstimatorConfig cfg;
  cfg.center_samples = static_cast<std::size_t>(state.range(0));
  const PlanarRegion u = PlanarRegion::hyper_ball(DiscPoint(cd(0.2, 0.1)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(bloch_radius(u, cfg));
}
BENCHMARK(BM_PlanarBlochRadius)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ProjectionMembership(benchmark::State& state) {
  const BallRegion x = BallRegion::horosphere_difference(2, 2.0, 1.0);
  const LempertDevice d = axis_device(2).device;
  for (auto _ : state) benchmark::DoNotOptimize(projection_contains(x, d, cd(0.1, 0.2)));
}
BENCHMARK(BM_ProjectionMembership);

void BM_CompositionRun(benchmark::State& state) {
  const IFSSpec ifs = example_product_ifs(2);
  const std::vector<CVec> probe = {CVec::Constant(2, 0.1), CVec::Constant(2, cd(0.0, 0.3)), CVec::Constant(2, -0.4)};
  RunOptions opts;
  opts.max_iter = 60;
  opts.run_to_max = true;
  for (auto _ : state) benchmark::DoNotOptimize(compose_run(ifs, probe, opts));
}
BENCHMARK(BM_CompositionRun)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
