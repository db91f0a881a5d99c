#include "wsnloc/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wsnloc/errors.hpp"
#include "wsnloc/random.hpp"

namespace wsnloc {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

using Genome = std::vector<double>;

Genome to_genome(const Placement& placement) {
  Genome genes;
  genes.reserve(placement.size() * 2);
  for (const Point& p : placement) {
    genes.push_back(p.x);
    genes.push_back(p.y);
  }
  return genes;
}

Placement to_placement(const Genome& genes) {
  Placement placement(genes.size() / 2);
  for (std::size_t k = 0; k < placement.size(); ++k) placement[k] = {genes[2 * k], genes[2 * k + 1]};
  return placement;
}

// Bounded simulated binary crossover, applied per gene with probability 1/2.
void sbx(Genome& a, Genome& b, const Bounds& bounds, double eta, Rng& rng) {
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (rng.uniform() > 0.5) continue;
    if (std::abs(a[g] - b[g]) <= 1e-14) continue;
    const double y1 = std::min(a[g], b[g]);
    const double y2 = std::max(a[g], b[g]);
    const double lo = bounds.lower[g];
    const double hi = bounds.upper[g];
    const double u = rng.uniform();
    const auto spread = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      return u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                              : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    };
    double c1 = 0.5 * ((y1 + y2) - spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1)) * (y2 - y1));
    double c2 = 0.5 * ((y1 + y2) + spread(1.0 + 2.0 * (hi - y2) / (y2 - y1)) * (y2 - y1));
    c1 = std::clamp(c1, lo, hi);
    c2 = std::clamp(c2, lo, hi);
    if (rng.uniform() <= 0.5) {
      a[g] = c2;
      b[g] = c1;
    } else {
      a[g] = c1;
      b[g] = c2;
    }
  }
}

void polynomial_mutation(Genome& genes, const Bounds& bounds, double pm, double eta, Rng& rng) {
  const double power = 1.0 / (eta + 1.0);
  for (std::size_t g = 0; g < genes.size(); ++g) {
    if (rng.uniform() >= pm) continue;
    const double lo = bounds.lower[g];
    const double hi = bounds.upper[g];
    const double span = hi - lo;
    if (!(span > 0.0)) continue;
    const double y = genes[g];
    const double u = rng.uniform();
    double delta;
    if (u <= 0.5) {
      const double xy = 1.0 - (y - lo) / span;
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
      delta = std::pow(val, power) - 1.0;
    } else {
      const double xy = 1.0 - (hi - y) / span;
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
      delta = 1.0 - std::pow(val, power);
    }
    genes[g] = std::clamp(y + delta * span, lo, hi);
  }
}

bool crowded_less(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

/// Assigns rank and crowding to every member; returns the fronts.
std::vector<std::vector<std::size_t>> rank_population(std::vector<Individual>& population) {
  std::vector<ObjectiveValues> points;
  points.reserve(population.size());
  for (const auto& ind : population) points.push_back(ind.objectives);
  auto fronts = non_dominated_sort(points);
  std::vector<ObjectiveValues> front_points;
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    front_points.clear();
    for (std::size_t idx : fronts[r]) front_points.push_back(population[idx].objectives);
    const auto crowding = crowding_distance(front_points);
    for (std::size_t t = 0; t < fronts[r].size(); ++t) {
      population[fronts[r][t]].rank = r;
      population[fronts[r][t]].crowding = crowding[t];
    }
  }
  return fronts;
}

GenerationStats stats_of(const std::vector<Individual>& population, std::size_t generation) {
  GenerationStats s{generation, kInfinity, kInfinity};
  for (const auto& ind : population) {
    s.best_f1 = std::min(s.best_f1, ind.objectives.f1);
    s.best_f2 = std::min(s.best_f2, ind.objectives.f2);
  }
  return s;
}

}  // namespace

void GaConfig::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw ConfigError("population size must be an even number >= 2, got " + std::to_string(population_size));
  }
  if (!(pc >= 0.0 && pc <= 1.0)) throw ConfigError("crossover probability must lie in [0, 1]");
  if (!(pm >= 0.0 && pm <= 1.0)) throw ConfigError("mutation probability must lie in [0, 1]");
  if (!(eta_c > 0.0) || !(eta_m > 0.0)) throw ConfigError("distribution indices must be positive");
}

LocalizationProblem::LocalizationProblem(const Network& network, const HopMatrix& real_hops, DistanceTable table,
                                         bool use_hop_loss)
    : network_(&network), table_(std::move(table)), hop_loss_(network, real_hops), use_hop_loss_(use_hop_loss) {}

ObjectiveValues LocalizationProblem::evaluate(const Placement& placement) const {
  ObjectiveValues v;
  v.f1 = f1(placement, table_, network_->anchors());
  v.f2 = use_hop_loss_ ? hop_loss_(placement) : 0.0;
  return v;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveValues> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
      } else if (dominates(points[q], points[p])) {
        ++domination_count[p];
      }
    }
    if (domination_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveValues> front) {
  const std::size_t n = front.size();
  std::vector<double> crowding(n, 0.0);
  if (n <= 2) {
    std::fill(crowding.begin(), crowding.end(), kInfinity);
    return crowding;
  }
  std::vector<std::size_t> order(n);
  for (double ObjectiveValues::*objective : {&ObjectiveValues::f1, &ObjectiveValues::f2}) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a].*objective < front[b].*objective; });
    const double lo = front[order.front()].*objective;
    const double hi = front[order.back()].*objective;
    crowding[order.front()] = kInfinity;
    crowding[order.back()] = kInfinity;
    if (!(hi > lo)) continue;
    for (std::size_t t = 1; t + 1 < n; ++t) {
      crowding[order[t]] += (front[order[t + 1]].*objective - front[order[t - 1]].*objective) / (hi - lo);
    }
  }
  return crowding;
}

ParetoResult run_nsga2(const LocalizationProblem& problem, const GaConfig& config, std::span<const Placement> seeds) {
  config.validate();
  const Network& network = problem.network();
  const std::size_t n_pop = config.population_size;
  const std::size_t n_genes = 2 * network.n_unknowns();

  Bounds bounds{std::vector<double>(n_genes, 0.0), std::vector<double>(n_genes)};
  for (std::size_t g = 0; g < n_genes; ++g) {
    bounds.upper[g] = g % 2 == 0 ? network.area().width : network.area().height;
  }

  Rng rng(config.seed);
  std::vector<Individual> population(n_pop);
  for (std::size_t p = 0; p < n_pop; ++p) {
    Genome genes(n_genes);
    for (std::size_t g = 0; g < n_genes; ++g) genes[g] = rng.uniform(bounds.lower[g], bounds.upper[g]);
    if (p < seeds.size()) {
      genes = to_genome(seeds[p]);
      if (genes.size() != n_genes) throw InvalidArgument("seed placement does not match the network");
      for (std::size_t g = 0; g < n_genes; ++g) genes[g] = std::clamp(genes[g], bounds.lower[g], bounds.upper[g]);
    }
    population[p].placement = to_placement(genes);
    population[p].objectives = problem.evaluate(population[p].placement);
  }
  rank_population(population);

  ParetoResult result;
  result.history.reserve(config.max_iter + 1);
  result.history.push_back(stats_of(population, 0));

  const auto tournament = [&]() -> const Individual& {
    const Individual& a = population[rng.index(n_pop)];
    const Individual& b = population[rng.index(n_pop)];
    return crowded_less(b, a) ? b : a;
  };

  for (std::size_t generation = 1; generation <= config.max_iter; ++generation) {
    std::vector<Individual> combined = population;
    combined.reserve(2 * n_pop);
    for (std::size_t c = 0; c < n_pop; c += 2) {
      Genome a = to_genome(tournament().placement);
      Genome b = to_genome(tournament().placement);
      if (rng.uniform() < config.pc) sbx(a, b, bounds, config.eta_c, rng);
      polynomial_mutation(a, bounds, config.pm, config.eta_m, rng);
      polynomial_mutation(b, bounds, config.pm, config.eta_m, rng);
      for (Genome* child : {&a, &b}) {
        Individual ind;
        ind.placement = to_placement(*child);
        ind.objectives = problem.evaluate(ind.placement);
        combined.push_back(std::move(ind));
      }
    }

    const auto fronts = rank_population(combined);
    std::vector<Individual> survivors;
    survivors.reserve(n_pop);
    for (const auto& front : fronts) {
      if (survivors.size() + front.size() <= n_pop) {
        for (std::size_t idx : front) survivors.push_back(std::move(combined[idx]));
        continue;
      }
      std::vector<std::size_t> order = front;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return combined[a].crowding > combined[b].crowding; });
      for (std::size_t t = 0; survivors.size() < n_pop; ++t) survivors.push_back(std::move(combined[order[t]]));
      break;
    }
    population = std::move(survivors);
    result.history.push_back(stats_of(population, generation));
  }

  std::size_t best = 0;
  for (std::size_t p = 1; p < population.size(); ++p) {
    const auto& a = population[p].objectives;
    const auto& b = population[best].objectives;
    if (a.f2 < b.f2 || (a.f2 == b.f2 && a.f1 < b.f1)) best = p;
  }
  result.chosen = population[best];
  result.final_population = std::move(population);
  return result;
}

}  // namespace wsnloc
