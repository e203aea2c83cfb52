#include <benchmark/benchmark.h>

#include "logvoa/fock.hpp"
#include "logvoa/linalg.hpp"
#include "logvoa/scalar.hpp"

using namespace logvoa;

static void BM_EtaInverseSeries(benchmark::State& state) {
  long n = state.range(0);
  for (auto _ : state) {
    QSeries s = eta_inverse_series(n);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EtaInverseSeries)->Arg(30)->Arg(100)->Arg(300);

static void BM_LevelBasis(benchmark::State& state) {
  OmegaSpec omega(Rational(0), {3});
  for (auto _ : state) {
    auto basis = level_basis(static_cast<int>(state.range(0)), omega);
    benchmark::DoNotOptimize(basis);
  }
}
BENCHMARK(BM_LevelBasis)->Arg(6)->Arg(10);

static void BM_ApplyL(benchmark::State& state) {
  OmegaSpec omega(Rational(1, 2), {2});
  int level = static_cast<int>(state.range(0));
  std::vector<ModuleVector> vecs;
  for (const FockState& st : level_basis(level, omega)) vecs.push_back(ModuleVector::unit(st));
  for (auto _ : state)
    for (const auto& v : vecs)
      for (int n = -2; n <= 2; ++n) benchmark::DoNotOptimize(apply_L(n, v, omega, Rational(1, 2)));
}
BENCHMARK(BM_ApplyL)->Arg(4)->Arg(6);

static void BM_KernelBasis(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  Matrix m(n, 2 * n);
  long v = 1;
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < 2 * n; ++c) m.at(r, c) = Rational((v = (v * 37 + 11) % 19) - 9, 7);
  for (auto _ : state) benchmark::DoNotOptimize(m.kernel_basis());
}
BENCHMARK(BM_KernelBasis)->Arg(20)->Arg(40);
