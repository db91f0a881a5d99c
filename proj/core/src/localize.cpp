#include "wsnloc/localize.hpp"

#include <string>

#include "wsnloc/errors.hpp"

namespace wsnloc {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::DvHop: return "dvhop";
    case Method::DemnHop: return "demn-hop";
    case Method::Demn: return "demn";
    case Method::HopLoss: return "hop-loss";
  }
  return "dvhop";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (name == to_string(m)) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "' (expected dvhop, demn-hop, demn or hop-loss)");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::DvHop, Method::DemnHop, Method::Demn, Method::HopLoss};
  return methods;
}

Placement least_squares_placement(const Network& network, const DistanceTable& table) {
  const auto anchors = network.anchors();
  const Point centre{network.area().width / 2.0, network.area().height / 2.0};
  Placement placement(network.n_unknowns(), centre);
  std::vector<DistanceEstimate> estimates;
  for (std::size_t k = 0; k < network.n_unknowns(); ++k) {
    estimates.clear();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      if (const auto& e = table.at(i, k)) estimates.push_back(*e);
    }
    if (estimates.empty()) continue;
    try {
      placement[k] = least_squares_position(estimates, anchors);
    } catch (const SolverError&) {
      Point sum;
      for (const auto& e : estimates) {
        sum.x += anchors[e.anchor].x;
        sum.y += anchors[e.anchor].y;
      }
      placement[k] = {sum.x / estimates.size(), sum.y / estimates.size()};
    }
  }
  return placement;
}

LocalizationResult localize(const Network& network, const HopMatrix& hops, Method method, const GaConfig& config,
                            const UpperBoundModel& ub_model) {
  const bool demn = method == Method::DemnHop || method == Method::Demn;
  DistanceTable table =
      distance_table(network, hops, ub_model, demn ? EstimatorMode::Demn : EstimatorMode::ClassicOnly);

  LocalizationResult result;
  result.method = method;
  result.demn_estimates = table.count(EstimateSource::Demn);
  result.classic_estimates = table.count(EstimateSource::ClassicDvHop);
  if (method == Method::DvHop) {
    result.placement = least_squares_placement(network, table);
    return result;
  }

  GaConfig ga = config;
  ga.use_hop_loss = config.use_hop_loss && method != Method::Demn;
  std::vector<Placement> seeds;
  if (ga.warm_start) seeds.push_back(least_squares_placement(network, table));
  const LocalizationProblem problem(network, hops, std::move(table), ga.use_hop_loss);
  result.pareto = run_nsga2(problem, ga, seeds);
  result.placement = result.pareto->chosen.placement;
  return result;
}

LocalizationResult localize(const Network& network, Method method, const GaConfig& config,
                            const UpperBoundModel& ub_model) {
  return localize(network, hop_matrix(network), method, config, ub_model);
}

}  // namespace wsnloc
