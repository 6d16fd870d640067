#include <benchmark/benchmark.h>

#include <random>

#include "resha/cutset.hpp"
#include "resha/pipeline.hpp"
#include "resha/rts_fixture.hpp"

namespace {

using namespace resha;

const SystemModel& rts() {
  static const SystemModel model = build_rts_reference_model();
  return model;
}

void BM_BuildRtsTree(benchmark::State& state) {
  AnalysisConfig c;
  c.truncation = 1;
  c.scope = "RPS";
  c.scope_table = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_analysis(rts(), c).full_tree.events().size());
}
BENCHMARK(BM_BuildRtsTree)->Unit(benchmark::kMillisecond);

void BM_RpsScope(benchmark::State& state) {
  AnalysisConfig c;
  c.scope = "RPS";
  c.truncation = static_cast<int>(state.range(0));
  c.scope_table = false;
  std::size_t sets = 0;
  for (auto _ : state) sets = run_analysis(rts(), c).cutsets.sets.size();
  state.counters["cut_sets"] = static_cast<double>(sets);
}
BENCHMARK(BM_RpsScope)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FullRts(benchmark::State& state) {
  AnalysisConfig c;
  c.truncation = static_cast<int>(state.range(0));
  c.scope_table = false;
  std::size_t sets = 0;
  for (auto _ : state) sets = run_analysis(rts(), c).cutsets.sets.size();
  state.counters["cut_sets"] = static_cast<double>(sets);
}
BENCHMARK(BM_FullRts)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RandomTrees(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<FaultTree> trees;
  for (int i = 0; i < 100; ++i) trees.push_back(random_coherent_tree(rng));
  for (auto _ : state) {
    std::size_t total = 0;
    for (const auto& t : trees) total += solve_minimal_cut_sets(t).sets.size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_RandomTrees)->Unit(benchmark::kMillisecond);

void BM_BruteForceRandomTrees(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<FaultTree> trees;
  for (int i = 0; i < 100; ++i) trees.push_back(random_coherent_tree(rng));
  for (auto _ : state) {
    std::size_t total = 0;
    for (const auto& t : trees) total += brute_force_cut_sets(t).sets.size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_BruteForceRandomTrees)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
