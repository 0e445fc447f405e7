#include "recordlab/geometry.hpp"
#include "recordlab/montecarlo.hpp"
#include "recordlab/records.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace recordlab;

namespace {

std::vector<double> draw(const Model& m, long n, std::uint64_t stream) {
  RngStream rng(kDefaultSeed, stream);
  std::vector<double> xs(static_cast<std::size_t>(n * m.d));
  for (long i = 0; i < n; ++i) sample_into(m, rng, std::span<double>(xs).subspan(static_cast<std::size_t>(i * m.d), m.d));
  return xs;
}

void BM_Sample(benchmark::State& st) {
  const Model m(static_cast<ModelKind>(st.range(0)), static_cast<int>(st.range(1)));
  RngStream rng(kDefaultSeed, 0);
  std::vector<double> p(static_cast<std::size_t>(m.d));
  for (auto _ : st) {
    sample_into(m, rng, p);
    benchmark::DoNotOptimize(p.data());
  }
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Sample)->ArgsProduct({{0, 1}, {2, 5, 12}});

void BM_ParetoFront(benchmark::State& st) {
  const long n = st.range(0);
  const auto strategy = static_cast<FrontStrategy>(st.range(1));
  const Model m(ModelKind::Simplex, 2);
  std::vector<double> xs = draw(m, n, 1);
  for (auto _ : st) {
    ParetoCounter pc(2, strategy);
    for (long i = 0; i < n; ++i) pc.push(std::span<const double>(xs).subspan(static_cast<std::size_t>(2 * i), 2));
    benchmark::DoNotOptimize(pc.count());
  }
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_ParetoFront)
    ->ArgsProduct({{10000, 100000, 1000000},
                   {static_cast<long>(FrontStrategy::Flat), static_cast<long>(FrontStrategy::Staircase)}})
    ->Unit(benchmark::kMillisecond);

void BM_AllRecords(benchmark::State& st) {
  const Model m(ModelKind::Simplex, static_cast<int>(st.range(0)));
  const long n = 10000;
  std::vector<double> xs = draw(m, n, 2);
  for (auto _ : st) {
    ParetoCounter pc(m.d);
    ChainCounter cc(m.d);
    DominatingCounter dc(m.d);
    for (long i = 0; i < n; ++i) {
      auto p = std::span<const double>(xs).subspan(static_cast<std::size_t>(i * m.d), m.d);
      pc.push(p);
      cc.push(p);
      dc.push(p);
    }
    benchmark::DoNotOptimize(pc.front_size() + cc.count() + dc.count());
  }
  st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_AllRecords)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Maxima(benchmark::State& st) {
  const Model m(ModelKind::Hypercube, static_cast<int>(st.range(0)));
  RngStream rng(kDefaultSeed, 3);
  std::vector<Point> pts;
  for (int i = 0; i < 5000; ++i) pts.push_back(sample_point(m, rng));
  for (auto _ : st) benchmark::DoNotOptimize(count_maxima(pts));
}
BENCHMARK(BM_Maxima)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Experiment(benchmark::State& st) {
  ExperimentConfig c;
  c.model = Model(ModelKind::Simplex, 2);
  c.ns = {1000};
  c.reps = 200;
  c.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(c).reps_done);
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);

}  // namespace
