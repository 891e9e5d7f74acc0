#include <benchmark/benchmark.h>

#include "lattab/calculus.hpp"
#include "lattab/special.hpp"
#include "lattab/stability.hpp"

using namespace lattab;

namespace {

void BM_ThetaCubic(benchmark::State& st) {
  const auto L = named::simple_cubic(1.0);
  for (auto _ : st) benchmark::DoNotOptimize(theta_lattice(L, 3.14159, SumConfig{1e-14}));
}
BENCHMARK(BM_ThetaCubic);

void BM_EpsteinZeta(benchmark::State& st) {
  const LatticeParams L{1.1, 0.9, 0.05, 0.45, 0.55, 1.0};
  const double two_s = double(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(epstein_zeta(L, two_s, ZetaBackend::GammaAccelerated, SumConfig{1e-11}).value);
}
BENCHMARK(BM_EpsteinZeta)->Arg(4)->Arg(6)->Arg(12);

void BM_HessianGaussian(benchmark::State& st) {
  const LatticeParams L{1.1, 0.9, 0.05, 0.45, 0.55, 1.0};
  const auto f = Potential::gaussian(1.0);
  for (auto _ : st) benchmark::DoNotOptimize(hessian(f, L, SumConfig{1e-12}).m(0, 0));
}
BENCHMARK(BM_HessianGaussian)->Unit(benchmark::kMillisecond);

void BM_HessianLJ(benchmark::State& st) {
  const auto f = Potential::lennard_jones(2, 1, 3, 6);
  for (auto _ : st) benchmark::DoNotOptimize(hessian(f, named::fcc(1.2), SumConfig{1e-10}).m(0, 0));
}
BENCHMARK(BM_HessianLJ)->Unit(benchmark::kMillisecond);

void BM_RShellTable(benchmark::State& st) {
  // Past the cached sizes, so each iteration enumerates.
  const int t = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(r_shell_table(t)->size());
}
BENCHMARK(BM_RShellTable)->Arg(800)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_FccThresholds(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lj_fcc_thresholds(LennardJones{2, 1, 3, 6}).v_lo);
}
BENCHMARK(BM_FccThresholds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
