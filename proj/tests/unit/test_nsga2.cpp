#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "wsnloc/errors.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/nsga2.hpp"
#include "wsnloc/random.hpp"

using namespace wsnloc;

namespace {

std::vector<ObjectiveValues> random_points(Rng& rng, std::size_t n, bool integer_grid) {
  std::vector<ObjectiveValues> pts(n);
  for (auto& p : pts) {
    if (integer_grid) {
      p = {static_cast<double>(rng.index(12)), static_cast<double>(rng.index(12))};
    } else {
      p = {rng.uniform(), rng.uniform()};
    }
  }
  return pts;
}

struct Toy {
  Network net;
  HopMatrix hops;
  DistanceTable table;
};

// One unknown at (37, 58) ranged exactly by four anchors, all within one hop.
Toy one_unknown_toy() {
  Network net({{10, 10}, {90, 15}, {85, 90}, {15, 85}, {37, 58}}, 4, 100.0, Area{});
  HopMatrix hops = hop_matrix(net);
  DistanceTable table(4, 1);
  for (std::size_t i = 0; i < 4; ++i)
    table.set(i, 0, {i, 4, distance(net.position(i), net.position(4)), EstimateSource::Demn});
  return {std::move(net), std::move(hops), std::move(table)};
}

}  // namespace

TEST_CASE("three-point sort") {
  const std::vector<ObjectiveValues> pts{{1, 2}, {2, 1}, {3, 3}};
  const auto fronts = non_dominated_sort(pts);
  REQUIRE(fronts.size() == 2);
  CHECK(fronts[0] == std::vector<std::size_t>{0, 1});
  CHECK(fronts[1] == std::vector<std::size_t>{2});
}

TEST_CASE("identical points form one front") {
  const std::vector<ObjectiveValues> pts(7, ObjectiveValues{4, 4});
  const auto fronts = non_dominated_sort(pts);
  REQUIRE(fronts.size() == 1);
  CHECK(fronts[0].size() == 7);
}

TEST_CASE("sort matches the peeling oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(rng, 1 + rng.index(200), trial % 2 == 0);
    CHECK(non_dominated_sort(pts) == oracle::peel_fronts(pts));
  }
}

TEST_CASE("crowding distance examples") {
  const std::vector<ObjectiveValues> two{{0, 1}, {1, 0}};
  for (double c : crowding_distance(two)) CHECK(std::isinf(c));

  const std::vector<ObjectiveValues> line{{0, 2}, {1, 1}, {2, 0}};
  const auto c = crowding_distance(line);
  CHECK(std::isinf(c[0]));
  CHECK(std::isinf(c[2]));
  CHECK(c[1] == doctest::Approx(2.0));
}

TEST_CASE("crowding distance matches an independent implementation") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_points(rng, 20, false);
    const auto got = crowding_distance(pts);
    const auto ref = oracle::crowding(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::isinf(ref[i])) {
        CHECK(std::isinf(got[i]));
      } else {
        CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("configuration errors") {
  GaConfig c;
  c.population_size = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.population_size = 7;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = GaConfig{};
  c.pc = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = GaConfig{};
  c.pm = -0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_NOTHROW(GaConfig{}.validate());
}

TEST_CASE("one unknown converges to its true position") {
  Toy toy = one_unknown_toy();
  const LocalizationProblem problem(toy.net, toy.hops, toy.table);
  GaConfig cfg;
  cfg.max_iter = 500;
  cfg.seed = 5;
  const auto result = run_nsga2(problem, cfg);
  CHECK(distance(result.chosen.placement[0], toy.net.position(4)) < 1.0);
}

TEST_CASE("no generations returns the best initial member") {
  Toy toy = one_unknown_toy();
  const LocalizationProblem problem(toy.net, toy.hops, toy.table);
  GaConfig cfg;
  cfg.max_iter = 0;
  const auto result = run_nsga2(problem, cfg);
  REQUIRE(result.history.size() == 1);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ind : result.final_population) best = std::min(best, ind.objectives.f2);
  CHECK(result.chosen.objectives.f2 == best);
  for (const auto& ind : result.final_population)
    if (ind.objectives.f2 == best) CHECK(result.chosen.objectives.f1 <= ind.objectives.f1);
}

TEST_CASE("GA runs are seed deterministic, elitist and bounded") {
  const Network net = generate_network(TopologyShape{}, 40, 8, 30.0, Area{}, 3);
  const HopMatrix hops = hop_matrix(net);
  const LocalizationProblem problem(net, hops, distance_table(net, hops, UpperBoundModel::hop_times_radius()));
  GaConfig cfg;
  cfg.max_iter = 60;
  cfg.seed = 42;
  const auto a = run_nsga2(problem, cfg);
  const auto b = run_nsga2(problem, cfg);
  REQUIRE(a.final_population.size() == b.final_population.size());
  for (std::size_t i = 0; i < a.final_population.size(); ++i) {
    CHECK(a.final_population[i].placement == b.final_population[i].placement);
    CHECK(a.final_population[i].objectives == b.final_population[i].objectives);
  }
  CHECK(a.chosen.placement == b.chosen.placement);

  REQUIRE(a.history.size() == cfg.max_iter + 1);
  for (std::size_t g = 1; g < a.history.size(); ++g) {
    CHECK(a.history[g].generation == g);
    CHECK(a.history[g].best_f1 <= a.history[g - 1].best_f1);
    CHECK(a.history[g].best_f2 <= a.history[g - 1].best_f2);
  }

  double best_f2 = std::numeric_limits<double>::infinity();
  for (const auto& ind : a.final_population) {
    best_f2 = std::min(best_f2, ind.objectives.f2);
    CHECK(ind.objectives == problem.evaluate(ind.placement));
    for (Point p : ind.placement) CHECK(net.area().contains(p));
  }
  CHECK(a.chosen.objectives.f2 == best_f2);
  CHECK(a.final_population.size() == cfg.population_size);

  cfg.seed = 43;
  CHECK_FALSE(run_nsga2(problem, cfg).chosen.placement == a.chosen.placement);
}

TEST_CASE("ranks and crowding of the final population") {
  const Network net = generate_network(TopologyShape{}, 40, 8, 30.0, Area{}, 8);
  const HopMatrix hops = hop_matrix(net);
  const LocalizationProblem problem(net, hops, distance_table(net, hops, UpperBoundModel::hop_times_radius()));
  GaConfig cfg;
  cfg.max_iter = 20;
  const auto result = run_nsga2(problem, cfg);
  std::vector<ObjectiveValues> objs;
  for (const auto& ind : result.final_population) objs.push_back(ind.objectives);
  const auto fronts = oracle::peel_fronts(objs);
  for (std::size_t r = 0; r < fronts.size(); ++r)
    for (std::size_t i : fronts[r]) CHECK(result.final_population[i].rank == r);
}

TEST_CASE("f1-only problems hold f2 at zero") {
  Toy toy = one_unknown_toy();
  const LocalizationProblem problem(toy.net, toy.hops, toy.table, false);
  CHECK(problem.evaluate({{0, 0}}).f2 == 0.0);
  CHECK(problem.evaluate({{0, 0}}).f1 > 0.0);
}
