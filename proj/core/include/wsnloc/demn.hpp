#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wsnloc/dvhop.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"

namespace wsnloc {

/// Geometry of one cross domain. Anchor a_i sits at the origin and the
/// one-hop anchor a_j at (d, 0); the unknown is within `radius` of a_j and
/// within `ub` of a_i, having been reached from a_i in `m` hops.
struct CrossDomainCase {
  double d = 0.0;
  double radius = 0.0;
  int m = 1;
  double ub = 0.0;
};

/// Upper bound on the distance covered by m hops from an anchor.
class UpperBoundModel {
 public:
  enum class Strategy { HopTimesRadius, Custom };

  /// ub(m) = m * R.
  static UpperBoundModel hop_times_radius() { return UpperBoundModel(Strategy::HopTimesRadius, {}); }
  /// ub_by_hop[m - 1] in meters. Checked against ub(m) <= m * R and
  /// monotonicity when evaluated.
  static UpperBoundModel custom(std::vector<double> ub_by_hop);

  Strategy strategy() const { return strategy_; }
  double operator()(int m, double radius) const;

 private:
  UpperBoundModel(Strategy strategy, std::vector<double> table) : strategy_(strategy), table_(std::move(table)) {}

  Strategy strategy_;
  std::vector<double> table_;
};

struct RegionAreas {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;  // m = 2 only

  double total() const { return d1 + d2 + d3; }
};

/// Area and first moment (integral of sqrt(x^2 + y^2)) of one region.
struct RegionIntegral {
  double area = 0.0;
  double moment = 0.0;

  double mean_distance() const { return area > 0.0 ? moment / area : 0.0; }
};

/// Integrals over the region decomposition of a cross domain.
///
/// D1 lies under Circle(a_j, R) for x in [d - R, x*], D2 under
/// Circle(a_i, ub) for x in [x*, ub], where x* = (ub^2 + d^2 - R^2) / (2d)
/// is the abscissa at which the two circles cross. When one circle nests in
/// the other, x* is clamped to the shared x-range so the missing region has
/// zero area. For m = 2, D3 is the part of Circle(a_j, R) outside
/// Circle(a_i, R) with x in [d/2, R].
struct CrossDomainIntegrals {
  RegionIntegral d1;
  RegionIntegral d2;
  RegionIntegral d3;

  RegionAreas areas() const { return {d1.area, d2.area, d3.area}; }
  /// Expected distance from a_i for a point uniform over the decomposition:
  /// pooled moment over pooled area.
  double expected_distance() const;
};

/// Clamped crossing abscissa x* used to split D1 from D2.
double crossing_abscissa(const CrossDomainCase& c);

/// Throws DomainError when the case lies outside the decomposition for its m
/// (empty cross domain for m = 1, d outside (R, ub) for m = 2), and
/// NumericError if quadrature misses the 1e-8 relative tolerance.
CrossDomainIntegrals cross_domain_integrals(const CrossDomainCase& c);

double expected_distance_m1(const CrossDomainCase& c);
double expected_distance_m2(const CrossDomainCase& c);
/// Dispatches on c.m.
double expected_distance(const CrossDomainCase& c);
RegionAreas region_areas(const CrossDomainCase& c);

/// True when cross_domain_integrals accepts the case.
bool demn_applicable(const CrossDomainCase& c);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  RegionAreas areas;
  std::size_t samples = 0;
  std::size_t accepted = 0;
};

/// Uniform sampling over a box enclosing the decomposition, using only the
/// membership predicates of D1, D2 and D3. A point inside several regions is
/// weighted by its multiplicity, matching the pooled expectation. Throws
/// SamplingError when the acceptance rate falls below `min_acceptance`.
MonteCarloEstimate monte_carlo_expected_distance(const CrossDomainCase& c, std::size_t samples, std::uint64_t seed,
                                                 double min_acceptance = 1e-4);

/// DEMN estimate for every (anchor i, unknown k) with hops(i, k) = m in {1, 2}
/// that also has a one-hop anchor j != i. Among applicable j the farthest from
/// a_i (smallest cross domain) is used. Pairs without an applicable j produce no estimate.
std::vector<DistanceEstimate> demn_estimates(const Network& network, const HopMatrix& hops,
                                             const UpperBoundModel& ub_model);

}  // namespace wsnloc
