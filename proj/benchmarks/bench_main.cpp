#include <benchmark/benchmark.h>

#include <random>

#include "antistoch/canon_prop.hpp"
#include "antistoch/covercode.hpp"
#include "antistoch/degseq_prop.hpp"
#include "antistoch/graph.hpp"
#include "antistoch/lowerbound.hpp"

using namespace antistoch;

static void BM_RandomGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_graph(n, {1, stream++}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pair_count(n)));
}
BENCHMARK(BM_RandomGraph)->Arg(200)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMicrosecond);

static void BM_Syndrome(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto code = build_code(n);
  std::mt19937_64 rng(1);
  Word w(n);
  for (std::size_t t = 1; t <= n; ++t) w.set(t, rng() & 1u);
  for (auto _ : state) benchmark::DoNotOptimize(code.syndrome(w));
}
BENCHMARK(BM_Syndrome)->Arg(12)->Arg(435)->Arg(10'000'000);

static void BM_ProfileDecideA(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = random_graph(n, {2, 0});
  const auto codes = ACodes::for_window(window(n));
  for (auto _ : state) benchmark::DoNotOptimize(decide_a(profile(g), codes));
}
BENCHMARK(BM_ProfileDecideA)->Arg(500)->Arg(2000);

static void BM_AdversaryA(benchmark::State& state) {
  const Graph g = random_graph(500, {3, 0});
  const auto codes = ACodes::for_window(window(500));
  for (auto _ : state) benchmark::DoNotOptimize(adversary_a(g, codes));
}
BENCHMARK(BM_AdversaryA);

static void BM_DecideQk(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = random_graph(n, {4, 0});
  for (auto _ : state) benchmark::DoNotOptimize(decide_qk(g, 13));
}
BENCHMARK(BM_DecideQk)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_AdversaryQk(benchmark::State& state) {
  const Graph g = random_graph(5000, {5, 0});
  for (auto _ : state) benchmark::DoNotOptimize(adversary_qk(g, 13));
}
BENCHMARK(BM_AdversaryQk)->Unit(benchmark::kMillisecond);

static void BM_DegreeRange(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = random_graph(n, {6, 0});
  const auto t = ThresholdSet::of(n);
  for (auto _ : state) benchmark::DoNotOptimize(check_degree_range(g, t));
}
BENCHMARK(BM_DegreeRange)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
