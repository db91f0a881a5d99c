#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "wsnloc/demn.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/nsga2.hpp"
#include "wsnloc/objectives.hpp"

namespace wsnloc {

enum class Method {
  DvHop,    // hop-count distances, least squares
  DemnHop,  // DEMN distances, NSGA-II on (f1, f2)
  Demn,     // DEMN distances, evolutionary search on f1 alone
  HopLoss,  // hop-count distances, NSGA-II on (f1, f2)
};

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();

/// Least-squares position for every unknown from its tabulated estimates.
/// Unknowns with fewer than three usable anchors, or a singular system, fall
/// back to the centroid of their tabulated anchors (area centre if none).
Placement least_squares_placement(const Network& network, const DistanceTable& table);

struct LocalizationResult {
  Method method = Method::DvHop;
  Placement placement;
  std::size_t demn_estimates = 0;
  std::size_t classic_estimates = 0;
  std::optional<ParetoResult> pareto;
};

LocalizationResult localize(const Network& network, const HopMatrix& hops, Method method, const GaConfig& config,
                            const UpperBoundModel& ub_model = UpperBoundModel::hop_times_radius());
LocalizationResult localize(const Network& network, Method method, const GaConfig& config,
                            const UpperBoundModel& ub_model = UpperBoundModel::hop_times_radius());

}  // namespace wsnloc
