#include <benchmark/benchmark.h>

#include <map>

#include "ghostcs/field_sim.hpp"
#include "ghostcs/measurement.hpp"
#include "ghostcs/phantoms.hpp"
#include "ghostcs/reconstruct.hpp"
#include "ghostcs/sensing.hpp"
#include "ghostcs/transforms.hpp"

using namespace ghostcs;

namespace {

SpeckleParams slit_params() {
  SpeckleParams p;
  p.seed = 1;
  p.aperture_diameter = spectral_aperture_for_fwhm(64, 64, 1.53);
  return p;
}

const MeasurementEnsemble& slit_ensemble(std::size_t m) {
  static std::map<std::size_t, MeasurementEnsemble> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, acquire(double_slit({}), slit_params(), m, 0.0, 0)).first;
  return it->second;
}

void BM_SpecklePattern(benchmark::State& state) {
  const SpeckleParams p = slit_params();
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(speckle_pattern(p, r++));
}
BENCHMARK(BM_SpecklePattern);

void BM_FresnelPattern(benchmark::State& state) {
  SpeckleParams p;
  p.mode = SpeckleMode::Fresnel;
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(speckle_pattern(p, r++));
}
BENCHMARK(BM_FresnelPattern);

void BM_Dct2Forward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Image img(n, n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(dct2_forward(img));
}
BENCHMARK(BM_Dct2Forward)->Arg(32)->Arg(64)->Arg(128);

void BM_SensingForward(benchmark::State& state) {
  const auto& e = slit_ensemble(static_cast<std::size_t>(state.range(0)));
  const SensingOperator op(e.patterns);
  const std::vector<double> x(op.cols(), 1.0);
  std::vector<double> y(op.rows());
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_SensingForward)->Arg(256)->Arg(1024);

void BM_SensingAdjoint(benchmark::State& state) {
  const auto& e = slit_ensemble(static_cast<std::size_t>(state.range(0)));
  const SensingOperator op(e.patterns);
  std::vector<double> x(op.cols());
  for (auto _ : state) {
    op.apply_adjoint(e.buckets, x);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_SensingAdjoint)->Arg(256)->Arg(1024);

void BM_GiReconstruct(benchmark::State& state) {
  const auto& e = slit_ensemble(512);
  for (auto _ : state) benchmark::DoNotOptimize(gi_reconstruct(e));
}
BENCHMARK(BM_GiReconstruct);

void BM_CsReconstruct(benchmark::State& state) {
  const auto& e = slit_ensemble(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cs_reconstruct(e, SparseSolverConfig{}));
}
BENCHMARK(BM_CsReconstruct)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
