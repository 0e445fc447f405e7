#include "recordlab/exactlaws.hpp"
#include "recordlab/varconstants.hpp"

#include <benchmark/benchmark.h>

using namespace recordlab;

namespace {

void BM_VConst(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(v_const(d).value.value);
}
BENCHMARK(BM_VConst)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_VTilde(benchmark::State& st) {
  ConstOptions o;
  o.precision = st.range(1) ? specfun::Precision::DoubleDouble : specfun::Precision::Double;
  for (auto _ : st) benchmark::DoNotOptimize(vtilde_const(static_cast<int>(st.range(0)), o).value.value);
}
BENCHMARK(BM_VTilde)->ArgsProduct({{4, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_KConst(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(k_const(static_cast<int>(st.range(0))).value.value);
}
BENCHMARK(BM_KConst)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ChainMoments(benchmark::State& st) {
  const Model m(ModelKind::Simplex, 3);
  for (auto _ : st) benchmark::DoNotOptimize(chain_moments_exact(m, st.range(0)).rows.back().mean);
}
BENCHMARK(BM_ChainMoments)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
