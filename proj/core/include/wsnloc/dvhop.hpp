#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsnloc/geometry.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"

namespace wsnloc {

enum class EstimateSource { ClassicDvHop, Demn };

std::string_view to_string(EstimateSource source);

/// Estimated anchor-to-unknown range. `anchor` and `unknown` are network node
/// indices.
struct DistanceEstimate {
  std::size_t anchor = 0;
  std::size_t unknown = 0;
  double distance = 0.0;
  EstimateSource source = EstimateSource::ClassicDvHop;
};

/// Meters per hop for each anchor; empty for anchors that reach no other anchor.
class AvgHopDistance {
 public:
  explicit AvgHopDistance(std::vector<std::optional<double>> per_anchor) : per_anchor_(std::move(per_anchor)) {}

  std::size_t size() const { return per_anchor_.size(); }
  bool defined(std::size_t anchor) const { return per_anchor_.at(anchor).has_value(); }
  const std::optional<double>& operator[](std::size_t anchor) const { return per_anchor_.at(anchor); }
  /// Throws EstimationError for an isolated anchor.
  double at(std::size_t anchor) const;

 private:
  std::vector<std::optional<double>> per_anchor_;
};

/// Sum of Euclidean distances to every other reachable anchor over the sum of
/// hop counts to them.
AvgHopDistance avg_hop_distance(const Network& network, const HopMatrix& hops);

/// avg[anchor] * hops(anchor, unknown). Throws EstimationError if the pair is
/// unreachable or the anchor has no hop size.
DistanceEstimate classic_distance(const AvgHopDistance& avg, const HopMatrix& hops, std::size_t anchor,
                                  std::size_t unknown);

/// Linearised multilateration. The last estimate's circle is subtracted from
/// the others and the resulting system is solved through its normal
/// equations. `anchor_positions` is indexed by DistanceEstimate::anchor.
/// Throws SolverError with fewer than three estimates or a singular system.
Point least_squares_position(std::span<const DistanceEstimate> estimates, std::span<const Point> anchor_positions);

}  // namespace wsnloc
