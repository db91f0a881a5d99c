#include <benchmark/benchmark.h>

#include "wsnloc/demn.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/nsga2.hpp"
#include "wsnloc/objectives.hpp"
#include "wsnloc/random.hpp"

using namespace wsnloc;

namespace {

Network bench_network(std::size_t anchors, double radius) {
  return generate_network(TopologyShape{}, 100, anchors, radius, Area{}, 1234);
}

void BM_HopMatrix(benchmark::State& state) {
  const Network net = bench_network(20, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hop_matrix(net));
}
BENCHMARK(BM_HopMatrix)->Arg(25)->Arg(40);

void BM_HopLoss(benchmark::State& state) {
  const Network net = bench_network(20, static_cast<double>(state.range(0)));
  const HopMatrix real = hop_matrix(net);
  const HopLoss loss(net, real);
  Rng rng(1);
  Placement p(net.n_unknowns());
  for (Point& q : p) q = {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
  for (auto _ : state) benchmark::DoNotOptimize(loss(p));
}
BENCHMARK(BM_HopLoss)->Arg(25)->Arg(40);

void BM_ExpectedDistance(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const CrossDomainCase c{m == 1 ? 20.0 : 35.0, 25.0, m, 25.0 * m};
  for (auto _ : state) benchmark::DoNotOptimize(expected_distance(c));
}
BENCHMARK(BM_ExpectedDistance)->Arg(1)->Arg(2);

void BM_DistanceTable(benchmark::State& state) {
  const Network net = bench_network(static_cast<std::size_t>(state.range(0)), 30.0);
  const HopMatrix hops = hop_matrix(net);
  for (auto _ : state) benchmark::DoNotOptimize(distance_table(net, hops, UpperBoundModel::hop_times_radius()));
}
BENCHMARK(BM_DistanceTable)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Nsga2Generations(benchmark::State& state) {
  const Network net = bench_network(20, 30.0);
  const HopMatrix hops = hop_matrix(net);
  const LocalizationProblem problem(net, hops, distance_table(net, hops, UpperBoundModel::hop_times_radius()));
  GaConfig cfg;
  cfg.max_iter = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_nsga2(problem, cfg));
}
BENCHMARK(BM_Nsga2Generations)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
