#include "wsnloc/metrics.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "wsnloc/errors.hpp"

namespace wsnloc {

double ales(const Placement& placement, std::span<const Point> ground_truth, double radius) {
  if (placement.size() != ground_truth.size()) throw InvalidArgument("placement and ground truth differ in length");
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  if (placement.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < placement.size(); ++k) total += distance(placement[k], ground_truth[k]);
  return 100.0 * total / (static_cast<double>(placement.size()) * radius);
}

double apg(std::span<const double> others, double ours) {
  if (others.empty()) throw InvalidArgument("APG needs at least one comparison value");
  double sum = 0.0;
  for (double other : others) sum += other - ours;
  return sum / static_cast<double>(others.size());
}

double student_t_upper_quantile(double upper_tail, double dof) {
  if (!(upper_tail > 0.0 && upper_tail < 1.0) || !(dof > 0.0)) throw InvalidArgument("invalid t quantile arguments");
  const boost::math::students_t dist(dof);
  return boost::math::quantile(boost::math::complement(dist, upper_tail));
}

ConfidenceInterval confidence_interval(std::span<const double> samples, double alpha) {
  const std::size_t n = samples.size();
  if (n < 2) throw InvalidArgument("confidence interval needs at least two samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double half = sd / std::sqrt(static_cast<double>(n)) * student_t_upper_quantile(alpha / 2.0, n - 1.0);
  return {mean, mean - half, mean + half};
}

}  // namespace wsnloc
