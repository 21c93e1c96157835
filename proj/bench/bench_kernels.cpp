// Parallel kernels vs their serial reference implementations.
// Run: ./perqw_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "perqw/attractors.hpp"
#include "perqw/channel.hpp"
#include "perqw/reference.hpp"

namespace {

using namespace perqw;

Matrix random_density(int d, unsigned seed) {
  std::srand(seed);
  Matrix a = Matrix::Random(d, d);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

void BM_ApplyChannel_Reference(benchmark::State& state) {
  const Topology t = Topology::line(static_cast<int>(state.range(0)));
  const auto m = PercolationModel::uniform(t, 0.5);
  const Matrix rho = random_density(t.dim2(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(reference::apply_channel(rho, t, m, 2));
}

void BM_ApplyChannel_Parallel(benchmark::State& state) {
  const Topology t = Topology::line(static_cast<int>(state.range(0)));
  const auto m = PercolationModel::uniform(t, 0.5);
  const Matrix rho = random_density(t.dim2(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(apply_channel(rho, t, m, 2));
}

void BM_Residual_Reference(benchmark::State& state) {
  const Topology t = Topology::line(static_cast<int>(state.range(0)));
  const Matrix w = swap_operator(t);
  for (auto _ : state) benchmark::DoNotOptimize(reference::attractor_residual(w, cxd(1, 0), t));
}

void BM_Residual_Parallel(benchmark::State& state) {
  const Topology t = Topology::line(static_cast<int>(state.range(0)));
  const Matrix w = swap_operator(t);
  for (auto _ : state) benchmark::DoNotOptimize(attractor_residual(w, cxd(1, 0), t));
}

void BM_Ensemble_Reference(benchmark::State& state) {
  const Topology t = Topology::line(4);
  const auto m = PercolationModel::uniform(t, 0.5);
  Vector psi = Vector::Zero(t.dim2());
  psi(0) = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        reference::trajectory_average(psi, t, m, 2, 20, 42, static_cast<std::uint64_t>(state.range(0))));
}

void BM_Ensemble_Parallel(benchmark::State& state) {
  const Topology t = Topology::line(4);
  const auto m = PercolationModel::uniform(t, 0.5);
  Vector psi = Vector::Zero(t.dim2());
  psi(0) = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        trajectory_average(psi, t, m, 2, 20, 42, static_cast<std::uint64_t>(state.range(0))));
}

BENCHMARK(BM_ApplyChannel_Reference)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyChannel_Parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Residual_Reference)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Residual_Parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ensemble_Reference)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ensemble_Parallel)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
