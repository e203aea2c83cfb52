#include <benchmark/benchmark.h>

#include "logvoa/virstruct.hpp"

using namespace logvoa;

static void BM_SingularBasis(benchmark::State& state) {
  int w = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(singular_basis(w, OmegaSpec::trivial()));
}
BENCHMARK(BM_SingularBasis)->Arg(4)->Arg(9);

static void BM_VirSubmoduleClosure(benchmark::State& state) {
  OmegaSpec omega(Rational(0), {2});
  ModuleVector u21 =
      embed_at_leg(singular_basis(1, OmegaSpec::trivial())[0].vector, 2);
  int bound = static_cast<int>(state.range(0));
  for (auto _ : state) {
    VirSubmodule sub({u21}, omega, bound);
    benchmark::DoNotOptimize(sub.graded_dims());
  }
}
BENCHMARK(BM_VirSubmoduleClosure)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_FusionSpan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fusion_span_check(1, 1, state.range(0)));
}
BENCHMARK(BM_FusionSpan)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_HiddenCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hidden_intertwiner_check(1, 1, 9, 6));
}
BENCHMARK(BM_HiddenCheck)->Unit(benchmark::kMillisecond);
