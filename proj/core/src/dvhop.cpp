#include "wsnloc/dvhop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsnloc/errors.hpp"

namespace wsnloc {

std::string_view to_string(EstimateSource source) {
  return source == EstimateSource::Demn ? "demn" : "dvhop";
}

double AvgHopDistance::at(std::size_t anchor) const {
  const auto& value = per_anchor_.at(anchor);
  if (!value) throw EstimationError("anchor " + std::to_string(anchor) + " reaches no other anchor");
  return *value;
}

AvgHopDistance avg_hop_distance(const Network& network, const HopMatrix& hops) {
  const std::size_t n_anchors = network.n_anchors();
  std::vector<std::optional<double>> per_anchor(n_anchors);
  for (std::size_t i = 0; i < n_anchors; ++i) {
    double meters = 0.0;
    long hop_sum = 0;
    for (std::size_t j = 0; j < n_anchors; ++j) {
      if (j == i || !hops.reachable(i, j)) continue;
      meters += distance(network.position(i), network.position(j));
      hop_sum += hops(i, j);
    }
    if (hop_sum > 0) per_anchor[i] = meters / static_cast<double>(hop_sum);
  }
  return AvgHopDistance(std::move(per_anchor));
}

DistanceEstimate classic_distance(const AvgHopDistance& avg, const HopMatrix& hops, std::size_t anchor,
                                  std::size_t unknown) {
  if (!hops.reachable(anchor, unknown)) {
    throw EstimationError("node " + std::to_string(unknown) + " is unreachable from anchor " + std::to_string(anchor));
  }
  return {anchor, unknown, avg.at(anchor) * hops(anchor, unknown), EstimateSource::ClassicDvHop};
}

Point least_squares_position(std::span<const DistanceEstimate> estimates, std::span<const Point> anchor_positions) {
  if (estimates.size() < 3) {
    throw SolverError("least squares needs at least 3 anchor estimates, got " + std::to_string(estimates.size()));
  }
  const DistanceEstimate& pivot = estimates.back();
  const Point pn = anchor_positions[pivot.anchor];
  const double dn = pivot.distance;

  // Rows: 2(x_i - x_n) x + 2(y_i - y_n) y = x_i^2 - x_n^2 + y_i^2 - y_n^2 + d_n^2 - d_i^2
  double ata00 = 0.0, ata01 = 0.0, ata11 = 0.0, atb0 = 0.0, atb1 = 0.0;
  for (std::size_t r = 0; r + 1 < estimates.size(); ++r) {
    const Point p = anchor_positions[estimates[r].anchor];
    const double di = estimates[r].distance;
    const double a0 = 2.0 * (p.x - pn.x);
    const double a1 = 2.0 * (p.y - pn.y);
    const double b = p.x * p.x - pn.x * pn.x + p.y * p.y - pn.y * pn.y + dn * dn - di * di;
    ata00 += a0 * a0;
    ata01 += a0 * a1;
    ata11 += a1 * a1;
    atb0 += a0 * b;
    atb1 += a1 * b;
  }
  const double det = ata00 * ata11 - ata01 * ata01;
  if (!(std::abs(det) > 1e-10 * std::max(1.0, (ata00 + ata11) * (ata00 + ata11)))) {
    throw SolverError("anchors are collinear; multilateration system is singular");
  }
  return {(ata11 * atb0 - ata01 * atb1) / det, (ata00 * atb1 - ata01 * atb0) / det};
}

}  // namespace wsnloc
