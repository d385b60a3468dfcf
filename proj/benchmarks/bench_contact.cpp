#include <benchmark/benchmark.h>

#include "contact/experiments.hpp"
#include "contact/harris.hpp"
#include "contact/oracle.hpp"
#include "contact/process.hpp"

using namespace contact;

static void BM_HarrisSample(benchmark::State& state) {
  const Graph g = random_tree(static_cast<std::size_t>(state.range(0)), 1);
  Seed seed = 0;
  std::size_t events = 0;
  for (auto _ : state) {
    const HarrisSystem h = HarrisSystem::sample(g, 2.0, 10.0, seed++);
    events += h.event_count();
    benchmark::DoNotOptimize(events);
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_HarrisSample)->Arg(16)->Arg(256)->Arg(4096);

static void BM_ExtinctionTime(benchmark::State& state) {
  const Graph g = make_star(static_cast<std::size_t>(state.range(0)));
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extinction_time(g, 2.0, seed++, 1e6));
}
BENCHMARK(BM_ExtinctionTime)->Arg(4)->Arg(8)->Arg(12);

static void BM_ExtinctionTimeLine(benchmark::State& state) {
  const Graph g = make_line(static_cast<std::size_t>(state.range(0)));
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extinction_time(g, 2.0, seed++, 1e6));
}
BENCHMARK(BM_ExtinctionTimeLine)->Arg(8)->Arg(16)->Arg(32);

static void BM_ExactMean(benchmark::State& state) {
  const Graph g = make_line(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_expected_extinction(g, 2.0));
}
BENCHMARK(BM_ExactMean)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_ExactTransient(benchmark::State& state) {
  const Graph g = make_star(static_cast<std::size_t>(state.range(0)));
  const Configuration start = Configuration::full(g.n_vertices());
  for (auto _ : state) benchmark::DoNotOptimize(exact_transient_survival(g, 1.0, start, 5.0));
}
BENCHMARK(BM_ExactTransient)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_MeanEstimate(benchmark::State& state) {
  const Graph g = random_tree(8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mean_extinction(g, 1.0, 1000, 1e6, 3));
}
BENCHMARK(BM_MeanEstimate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
