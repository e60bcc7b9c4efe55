// Throughput of the pieces that dominate an ensemble sample.
#include "osclab/anderson.hpp"
#include "osclab/eigensolver.hpp"
#include "osclab/kernels.hpp"
#include "osclab/weyl.hpp"

#include <benchmark/benchmark.h>

namespace {

osc::SpectralData chain_spectrum(int length) {
  osc::DisorderConfig cfg;
  const auto box = osc::BoxGeometry::chain(length);
  return osc::diagonalize(osc::assemble(box, osc::sample_disorder(cfg, box, 0)));
}

void BM_SymmetricEigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  osc::DisorderConfig cfg;
  const auto box = osc::BoxGeometry::cube(state.range(1) == 1 ? 1 : 2, state.range(1) == 1 ? n : n / 10);
  const Eigen::MatrixXd h = osc::assemble(box, osc::sample_disorder(cfg, box, 0));
  for (auto _ : state) benchmark::DoNotOptimize(osc::symmetric_eigen(h));
  state.SetLabel(std::to_string(box.size()) + " sites");
}
BENCHMARK(BM_SymmetricEigen)->Args({100, 1})->Args({200, 1})->Args({400, 2})->Unit(benchmark::kMillisecond);

void BM_MatrixElement1d(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const osc::Complex z(0.7, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(osc::matrix_element_1d(n, n + 3, z));
}
BENCHMARK(BM_MatrixElement1d)->Arg(1)->Arg(10)->Arg(100);

void BM_LrGrid(benchmark::State& state) {
  const auto spec = chain_spectrum(100);
  const auto grid = osc::TimeGrid::uniform(500.0, static_cast<std::size_t>(state.range(0)));
  std::vector<osc::SiteIndex> ys;
  for (osc::SiteIndex y = 10; y < 90; ++y) ys.push_back(y);
  for (auto _ : state) benchmark::DoNotOptimize(osc::lr_norm_grid(spec, osc::kFullSpectrum, 50, 1.0, ys, 1.0, grid));
}
BENCHMARK(BM_LrGrid)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_QuasiLocalityGrid(benchmark::State& state) {
  const auto spec = chain_spectrum(100);
  const auto box = osc::BoxGeometry::chain(100);
  const auto grid = osc::TimeGrid::uniform(500.0, static_cast<std::size_t>(state.range(0)));
  const std::vector<osc::OccupationVector> family = {osc::OccupationVector::zeros(100)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(osc::quasi_locality_grid(spec, box, osc::kFullSpectrum, 50, 1.0, 2, 20, grid, family));
  }
}
BENCHMARK(BM_QuasiLocalityGrid)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_EvaluateSample(benchmark::State& state) {
  osc::ExperimentConfig cfg;
  cfg.kind = static_cast<osc::ExperimentKind>(state.range(0));
  cfg.shell_min = 5;
  cfg.shell_max = 40;
  cfg.n_min = 2;
  cfg.n_max = 20;
  cfg.time_points = 500;
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(osc::evaluate_sample(cfg, index++));
  state.SetLabel(osc::to_string(cfg.kind));
}
BENCHMARK(BM_EvaluateSample)
    ->Arg(static_cast<int>(osc::ExperimentKind::lr_bound))
    ->Arg(static_cast<int>(osc::ExperimentKind::quasi_locality))
    ->Arg(static_cast<int>(osc::ExperimentKind::eigencorrelator))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
