#include "wsnloc/demn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wsnloc/errors.hpp"
#include "wsnloc/random.hpp"

namespace wsnloc {

namespace {

constexpr double kQuadratureTolerance = 1e-8;

std::string describe(const CrossDomainCase& c) {
  return "(d=" + std::to_string(c.d) + ", R=" + std::to_string(c.radius) + ", m=" + std::to_string(c.m) +
         ", ub=" + std::to_string(c.ub) + ")";
}

/// Integral of sqrt(x^2 + y^2) for y in [0, height].
double column_moment(double x, double height) {
  const double r = std::hypot(x, height);
  const double ax = std::abs(x);
  const double log_term = ax > 0.0 ? x * x * std::asinh(height / ax) : 0.0;
  return 0.5 * (height * r + log_term);
}

template <class F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-11, &error, &l1);
  if (!std::isfinite(value) || error > std::max(kQuadratureTolerance * std::abs(value), 1e-15 * l1)) {
    throw NumericError("quadrature did not reach relative tolerance 1e-8 (error estimate " + std::to_string(error) +
                       ")");
  }
  return value;
}

/// Region between the x-axis and the upper arc of the circle centred at
/// (centre, 0) with radius rho, for x in [a, b]. Integrated in the arc angle
/// (x = centre + rho cos t) so the integrands stay smooth at the arc ends.
RegionIntegral under_arc(double centre, double rho, double a, double b) {
  if (!(b > a)) return {};
  const auto angle = [&](double x) { return std::acos(std::clamp((x - centre) / rho, -1.0, 1.0)); };
  const double t_lo = angle(b);
  const double t_hi = angle(a);
  RegionIntegral out;
  out.area = integrate(
      [&](double t) {
        const double s = std::sin(t);
        return rho * rho * s * s;
      },
      t_lo, t_hi);
  out.moment = integrate(
      [&](double t) {
        const double s = std::sin(t);
        return column_moment(centre + rho * std::cos(t), rho * s) * rho * s;
      },
      t_lo, t_hi);
  return out;
}

struct Limits {
  double lo;  // left end of D1
  double hi;  // right end of D2
  double crossing;
};

Limits limits(const CrossDomainCase& c) {
  const double lo = std::max(c.d - c.radius, -c.ub);
  const double hi = std::min(c.ub, c.d + c.radius);
  const double raw = (c.ub * c.ub + c.d * c.d - c.radius * c.radius) / (2.0 * c.d);
  return {lo, hi, std::clamp(raw, lo, std::max(lo, hi))};
}

void check_parameters(const CrossDomainCase& c) {
  const bool finite = std::isfinite(c.d) && std::isfinite(c.radius) && std::isfinite(c.ub);
  if (!finite || !(c.d > 0.0) || !(c.radius > 0.0) || !(c.ub > 0.0)) {
    throw DomainError("cross domain parameters must be positive and finite " + describe(c));
  }
  if (c.m != 1 && c.m != 2) throw DomainError("expected distance is defined for m in {1, 2} " + describe(c));
}

void check_case(const CrossDomainCase& c) {
  check_parameters(c);
  if (!(c.d - c.radius < c.ub)) throw DomainError("cross domain is empty " + describe(c));
  if (c.m == 2 && !(c.radius < c.d && c.d < c.ub)) {
    throw DomainError("two-hop decomposition requires R < d < ub " + describe(c));
  }
}

}  // namespace

UpperBoundModel UpperBoundModel::custom(std::vector<double> ub_by_hop) {
  if (ub_by_hop.empty()) throw ConfigError("custom upper-bound table is empty");
  for (std::size_t i = 0; i < ub_by_hop.size(); ++i) {
    if (!(ub_by_hop[i] > 0.0)) throw ConfigError("custom upper bound for m=" + std::to_string(i + 1) + " must be > 0");
    if (i > 0 && ub_by_hop[i] < ub_by_hop[i - 1]) throw ConfigError("custom upper bounds must be non-decreasing in m");
  }
  return UpperBoundModel(Strategy::Custom, std::move(ub_by_hop));
}

double UpperBoundModel::operator()(int m, double radius) const {
  if (m < 1) throw InvalidArgument("hop count must be >= 1");
  if (strategy_ == Strategy::HopTimesRadius) return m * radius;
  if (static_cast<std::size_t>(m) > table_.size()) {
    throw ConfigError("custom upper-bound table has no entry for m=" + std::to_string(m));
  }
  const double ub = table_[m - 1];
  if (ub > m * radius) {
    throw ConfigError("custom upper bound " + std::to_string(ub) + " exceeds m*R for m=" + std::to_string(m));
  }
  return ub;
}

double CrossDomainIntegrals::expected_distance() const {
  const double area = d1.area + d2.area + d3.area;
  if (!(area > 0.0)) throw DomainError("cross domain has zero area");
  return (d1.moment + d2.moment + d3.moment) / area;
}

double crossing_abscissa(const CrossDomainCase& c) {
  check_parameters(c);
  return limits(c).crossing;
}

CrossDomainIntegrals cross_domain_integrals(const CrossDomainCase& c) {
  check_case(c);
  const Limits lim = limits(c);
  CrossDomainIntegrals out;
  out.d1 = under_arc(c.d, c.radius, lim.lo, lim.crossing);
  out.d2 = under_arc(0.0, c.ub, lim.crossing, lim.hi);
  if (c.m == 2 && c.d / 2.0 < c.radius) {
    const RegionIntegral outer = under_arc(c.d, c.radius, c.d / 2.0, c.radius);
    const RegionIntegral inner = under_arc(0.0, c.radius, c.d / 2.0, c.radius);
    out.d3.area = std::max(0.0, outer.area - inner.area);
    out.d3.moment = std::max(0.0, outer.moment - inner.moment);
  }
  return out;
}

double expected_distance_m1(const CrossDomainCase& c) {
  if (c.m != 1) throw DomainError("expected_distance_m1 called with m=" + std::to_string(c.m));
  return cross_domain_integrals(c).expected_distance();
}

double expected_distance_m2(const CrossDomainCase& c) {
  if (c.m != 2) throw DomainError("expected_distance_m2 called with m=" + std::to_string(c.m));
  return cross_domain_integrals(c).expected_distance();
}

double expected_distance(const CrossDomainCase& c) { return cross_domain_integrals(c).expected_distance(); }

RegionAreas region_areas(const CrossDomainCase& c) { return cross_domain_integrals(c).areas(); }

bool demn_applicable(const CrossDomainCase& c) {
  try {
    check_case(c);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

MonteCarloEstimate monte_carlo_expected_distance(const CrossDomainCase& c, std::size_t samples, std::uint64_t seed,
                                                 double min_acceptance) {
  check_parameters(c);
  if (samples == 0) throw SamplingError("Monte Carlo needs at least one sample");
  const Limits lim = limits(c);
  const double d = c.d;
  const double r2 = c.radius * c.radius;
  const double ub2 = c.ub * c.ub;
  const bool has_d3 = c.m == 2 && d / 2.0 < c.radius;

  double x_min = lim.lo;
  double x_max = lim.hi;
  if (has_d3) {
    x_min = std::min(x_min, d / 2.0);
    x_max = std::max(x_max, c.radius);
  }
  const double y_max = std::min(c.radius, c.ub);
  if (!(x_max > x_min)) throw SamplingError("cross domain is empty " + describe(c));

  Rng rng(seed);
  std::size_t accepted = 0;
  std::size_t in_d1 = 0, in_d2 = 0, in_d3 = 0;
  double sum_w = 0.0, sum_wr = 0.0, sum_w2 = 0.0, sum_w2r = 0.0, sum_w2r2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = rng.uniform(x_min, x_max);
    const double y = rng.uniform(0.0, y_max);
    const double y2 = y * y;
    const double from_i = x * x + y2;
    const double from_j = (x - d) * (x - d) + y2;
    const bool a = x >= lim.lo && x <= lim.crossing && from_j <= r2;
    const bool b = x >= lim.crossing && x <= lim.hi && from_i <= ub2;
    const bool e = has_d3 && x >= d / 2.0 && x <= c.radius && from_i >= r2 && from_j <= r2;
    const int w = int{a} + int{b} + int{e};
    if (w == 0) continue;
    ++accepted;
    in_d1 += a;
    in_d2 += b;
    in_d3 += e;
    const double r = std::sqrt(from_i);
    sum_w += w;
    sum_wr += w * r;
    sum_w2 += w * w;
    sum_w2r += w * w * r;
    sum_w2r2 += w * w * r * r;
  }

  const double rate = static_cast<double>(accepted) / static_cast<double>(samples);
  if (accepted == 0 || rate < min_acceptance) {
    throw SamplingError("Monte Carlo acceptance rate " + std::to_string(rate) + " below threshold " + describe(c));
  }
  MonteCarloEstimate out;
  out.samples = samples;
  out.accepted = accepted;
  out.mean = sum_wr / sum_w;
  // Delta-method standard error of the ratio estimator.
  const double residual = sum_w2r2 - 2.0 * out.mean * sum_w2r + out.mean * out.mean * sum_w2;
  out.standard_error = std::sqrt(std::max(0.0, residual)) / sum_w;
  const double cell = (x_max - x_min) * y_max / static_cast<double>(samples);
  out.areas = {in_d1 * cell, in_d2 * cell, in_d3 * cell};
  return out;
}

std::vector<DistanceEstimate> demn_estimates(const Network& network, const HopMatrix& hops,
                                             const UpperBoundModel& ub_model) {
  const std::size_t n_anchors = network.n_anchors();
  const double radius = network.radius();
  std::vector<DistanceEstimate> out;
  for (std::size_t k = n_anchors; k < network.size(); ++k) {
    for (std::size_t i = 0; i < n_anchors; ++i) {
      const int m = hops(i, k);
      if (m != 1 && m != 2) continue;
      const double ub = ub_model(m, radius);
      std::optional<CrossDomainCase> best;
      for (std::size_t j = 0; j < n_anchors; ++j) {
        if (j == i || hops(j, k) != 1) continue;
        const CrossDomainCase candidate{distance(network.position(i), network.position(j)), radius, m, ub};
        if (!demn_applicable(candidate)) continue;
        if (!best || candidate.d > best->d) best = candidate;
      }
      if (!best) continue;
      try {
        out.push_back({i, k, expected_distance(*best), EstimateSource::Demn});
      } catch (const NumericError&) {
        // falls back to the hop-count estimate downstream
      }
    }
  }
  return out;
}

}  // namespace wsnloc
