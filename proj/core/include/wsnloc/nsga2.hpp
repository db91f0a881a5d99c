#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/objectives.hpp"

namespace wsnloc {

struct GaConfig {
  std::size_t population_size = 20;
  std::size_t max_iter = 500;
  double pc = 0.9;  // per mating pair
  double pm = 0.1;  // per coordinate
  double eta_c = 20.0;
  double eta_m = 20.0;
  std::uint64_t seed = 1;
  /// When false the second objective is held at zero and the search reduces
  /// to minimising f1.
  bool use_hop_loss = true;
  /// Seed one initial individual with the least-squares placement instead of
  /// a uniform draw.
  bool warm_start = false;

  /// Throws ConfigError.
  void validate() const;
};

struct Individual {
  Placement placement;
  ObjectiveValues objectives;
  std::size_t rank = 0;
  double crowding = 0.0;
};

struct GenerationStats {
  std::size_t generation = 0;
  double best_f1 = 0.0;
  double best_f2 = 0.0;
};

struct ParetoResult {
  std::vector<Individual> final_population;
  Individual chosen;
  /// Entry 0 describes the initial population, entry g the population after
  /// generation g.
  std::vector<GenerationStats> history;
};

/// f1/f2 evaluation for one network. Keeps a reference to `network`, which
/// must outlive the problem.
class LocalizationProblem {
 public:
  LocalizationProblem(const Network& network, const HopMatrix& real_hops, DistanceTable table,
                      bool use_hop_loss = true);

  ObjectiveValues evaluate(const Placement& placement) const;
  const Network& network() const { return *network_; }
  const DistanceTable& table() const { return table_; }
  bool uses_hop_loss() const { return use_hop_loss_; }

 private:
  const Network* network_;
  DistanceTable table_;
  HopLoss hop_loss_;
  bool use_hop_loss_;
};

inline bool dominates(const ObjectiveValues& a, const ObjectiveValues& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

/// Fast non-dominated sorting (minimisation on both objectives). Returns
/// fronts of point indices, best front first, indices ascending within a front.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveValues> points);

/// Crowding distance of each point in one front. Boundary points per
/// objective get +infinity; interior points sum the normalised neighbour gaps.
std::vector<double> crowding_distance(std::span<const ObjectiveValues> front);

/// Real-coded NSGA-II over placements: binary crowded tournament, SBX,
/// polynomial mutation, (mu + lambda) survival. `seeds` replace the first
/// uniform individuals. The returned `chosen` individual has the minimum f2
/// (ties: smaller f1, then lower index).
ParetoResult run_nsga2(const LocalizationProblem& problem, const GaConfig& config,
                       std::span<const Placement> seeds = {});

}  // namespace wsnloc
