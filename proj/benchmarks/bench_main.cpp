#include <benchmark/benchmark.h>

#include "convexlab/fseries.hpp"
#include "convexlab/kernel_bounds.hpp"
#include "convexlab/kernels.hpp"
#include "convexlab/membership.hpp"

using namespace cvx;

static void BM_RampDeriv(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::ramp_deriv(0.37, j));
  }
}
BENCHMARK(BM_RampDeriv)->Arg(1)->Arg(4)->Arg(8)->Arg(12);

static void BM_TermJet(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::term_jet(kernels::KernelIndex(2), 0.4, 0.2, k));
  }
}
BENCHMARK(BM_TermJet)->Arg(2)->Arg(4)->Arg(8);

static void BM_SeriesValue(benchmark::State& state) {
  static cex::FSeries f;
  const double tol = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.value({0.3, 0.01}, tol));
  }
}
BENCHMARK(BM_SeriesValue)->Arg(1000)->Arg(1000000)->Arg(100000000);

static void BM_SeriesPartial(benchmark::State& state) {
  static cex::FSeries f;
  const MultiIndex alpha{{1, static_cast<int>(state.range(0)), 0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.partial({0.3, 0.01}, alpha, 1e-6));
  }
}
BENCHMARK(BM_SeriesPartial)->Arg(1)->Arg(3)->Arg(5);

static void BM_CBound(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::c_bound(m));
  }
}
BENCHMARK(BM_CBound)->Arg(2)->Arg(6)->Arg(10);

static void BM_PlotMembership(benchmark::State& state) {
  using namespace cvx::structures;
  const auto t = Expr::coord(0);
  SymbolicMap plot;
  plot.name = "parabola";
  plot.domain = open_interval(-1.0, 1.0);
  plot.components = {t, Expr::mul(t, t)};
  const auto X = descriptor_X();
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(plot_membership_subset(plot, X, K));
  }
}
BENCHMARK(BM_PlotMembership)->Arg(1)->Arg(3);

static void BM_LocallyClosed(benchmark::State& state) {
  using namespace cvx::structures;
  const auto X = descriptor_X();
  for (auto _ : state) {
    benchmark::DoNotOptimize(locally_closed_at(X, {1.0, 0.0}));
  }
}
BENCHMARK(BM_LocallyClosed);

BENCHMARK_MAIN();
