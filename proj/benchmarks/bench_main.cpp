#include <benchmark/benchmark.h>

#include "copnum/game.hpp"
#include "copnum/generators.hpp"
#include "copnum/spectral.hpp"
#include "copnum/strategies.hpp"

using namespace copnum;

static void BM_SolvePetersen(benchmark::State& state) {
  const Graph g = named_graph("petersen");
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_k_cops(g, k).state_count());
}
BENCHMARK(BM_SolvePetersen)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SolveMcGeeTwoCops(benchmark::State& state) {
  const Graph g = named_graph("mcgee");
  for (auto _ : state) benchmark::DoNotOptimize(solve_k_cops(g, 2).has_winning_placement());
}
BENCHMARK(BM_SolveMcGeeTwoCops)->Unit(benchmark::kMillisecond);

static void BM_LpsBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lps_graph({5, 13}).graph.order());
}
BENCHMARK(BM_LpsBuild)->Unit(benchmark::kMillisecond);

static void BM_Lambda2Lps(benchmark::State& state) {
  const Graph g = lps_graph({5, 13}).graph;
  for (auto _ : state) benchmark::DoNotOptimize(lambda2(g).value);
}
BENCHMARK(BM_Lambda2Lps)->Unit(benchmark::kMillisecond);

static void BM_ExactPhi(benchmark::State& state) {
  const Graph g = named_graph("tutte_coxeter");
  const auto k = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(isoperimetric_profile(g, k, {.mode = PhiMode::Exact, .threads = 1}).phi.size());
  }
}
BENCHMARK(BM_ExactPhi)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_MatchingAllStarts(benchmark::State& state) {
  const Graph g = lps_graph({5, 13}).graph;
  const double p = static_cast<double>(state.range(0)) / 1000.0;
  const std::uint32_t t = 3;
  const double eps = p / cop_density(g, StrategyMode::Theorem2, 1.0, t);
  const auto set = sample_cop_set(g, StrategyMode::Theorem2, eps, 1, {.enforce_epsilon_floor = false});
  for (auto _ : state) {
    CopNeighborhoods near(g, set.cops, t + 1);
    std::size_t saturated = 0;
    for (Vertex v = 0; v < g.order(); ++v) saturated += saturating_matching(build_hv(g, v, t, near)).saturating();
    benchmark::DoNotOptimize(saturated);
  }
}
BENCHMARK(BM_MatchingAllStarts)->Arg(70)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
