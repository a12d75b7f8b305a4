// Serial reference kernels against their OpenMP counterparts.
//   ./bench_kernels --benchmark_filter=Exf
// Thread count follows OMP_NUM_THREADS.

#include <map>
#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "exf/epidemic.hpp"
#include "exf/graph.hpp"
#include "exf/metrics.hpp"
#include "exf/stats.hpp"

namespace {

const exf::Graph& pa_graph(std::size_t n) {
  static std::map<std::size_t, exf::Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, exf::generate_pa_graph(n, 2, 0.4, 1)).first;
  return it->second;
}

std::vector<exf::NodeId> all_nodes(const exf::Graph& g) {
  std::vector<exf::NodeId> v(g.node_count());
  std::iota(v.begin(), v.end(), exf::NodeId{0});
  return v;
}

void BM_ExfAll_Serial(benchmark::State& state) {
  const auto& g = pa_graph(static_cast<std::size_t>(state.range(0)));
  const auto nodes = all_nodes(g);
  for (auto _ : state) benchmark::DoNotOptimize(exf::reference::expected_force_all(g, nodes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes.size()));
}

void BM_ExfAll_Parallel(benchmark::State& state) {
  const auto& g = pa_graph(static_cast<std::size_t>(state.range(0)));
  const auto nodes = all_nodes(g);
  for (auto _ : state) benchmark::DoNotOptimize(exf::expected_force_all(g, nodes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes.size()));
}

void BM_Diameter_Serial(benchmark::State& state) {
  const auto& g = pa_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exf::reference::exact_diameter(g));
}

void BM_Diameter_Parallel(benchmark::State& state) {
  const auto& g = pa_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exf::exact_diameter(g));
}

void BM_Diameter_Certified(benchmark::State& state) {
  const auto& g = pa_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exf::certified_diameter(g));
}

exf::SpreadParams sis_params() {
  exf::SpreadParams p;
  p.kind = exf::Process::SIS;
  p.beta = 0.07;
  p.gamma = 0.5;
  return p;
}

void BM_RunBatch_Serial(benchmark::State& state) {
  const auto& g = pa_graph(10000);
  auto seeds = all_nodes(g);
  seeds.resize(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exf::reference::run_batch(g, seeds, sis_params(), 20, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

void BM_RunBatch_Parallel(benchmark::State& state) {
  const auto& g = pa_graph(10000);
  auto seeds = all_nodes(g);
  seeds.resize(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exf::run_batch(g, seeds, sis_params(), 20, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

}  // namespace

BENCHMARK(BM_ExfAll_Serial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExfAll_Parallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter_Serial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter_Parallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter_Certified)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunBatch_Serial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunBatch_Parallel)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
