#include <benchmark/benchmark.h>

#include "logvoa/intertwiner.hpp"

using namespace logvoa;

namespace {

ModuleVector state(std::vector<int> parts, int leg = 1) {
  return ModuleVector::unit(FockState{Partition(std::move(parts)), leg});
}

}  // namespace

static void BM_TensorIdentitySpec(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tensor_identity_spec(Rational(0), OmegaSpec(Rational(1), {m}), OmegaSpec(Rational(1, 2), {m})));
}
BENCHMARK(BM_TensorIdentitySpec)->Arg(2)->Arg(3);

static void BM_CanonicalEval(benchmark::State& st) {
  IntertwinerSpec spec = tensor_identity_spec(Rational(0), OmegaSpec(Rational(1), {2}),
                                              OmegaSpec(Rational(1, 2), {2}));
  LogIntertwiner op(spec);
  long span = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(op.eval_vacuum(2, state({}, 2), span));
}
BENCHMARK(BM_CanonicalEval)->Arg(6)->Arg(8)->Arg(12);

static void BM_ExtendedEval(benchmark::State& st) {
  IntertwinerSpec spec = tensor_identity_spec(Rational(0), OmegaSpec(Rational(1), {2}),
                                              OmegaSpec(Rational(1, 2), {2}));
  LogIntertwiner op(spec);
  ModuleVector w2 = state({static_cast<int>(st.range(0))}, 2);
  for (auto _ : st) benchmark::DoNotOptimize(op.eval(2, w2, 8));
}
BENCHMARK(BM_ExtendedEval)->Arg(2)->Arg(4);

static void BM_HBracketCheck(benchmark::State& st) {
  IntertwinerSpec spec = tensor_identity_spec(Rational(1, 2), OmegaSpec(Rational(1), {2}),
                                              OmegaSpec(Rational(1, 2), {2}));
  LogIntertwiner op(spec);
  ModuleVector w2 = state({2, 1}, 2);
  for (auto _ : st) benchmark::DoNotOptimize(check_h_bracket(op, 2, -2, w2, 8));
}
BENCHMARK(BM_HBracketCheck);

static void BM_MeasuredDepth33(benchmark::State& st) {
  IntertwinerSpec spec = tensor_identity_spec(Rational(0), OmegaSpec(Rational(1), {3}),
                                              OmegaSpec(Rational(1), {3}));
  LogIntertwiner op(spec);
  for (auto _ : st) benchmark::DoNotOptimize(measured_depth(op, 1, 8));
}
BENCHMARK(BM_MeasuredDepth33)->Unit(benchmark::kMillisecond);
