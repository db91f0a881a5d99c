#pragma once

#include <span>

#include "wsnloc/geometry.hpp"
#include "wsnloc/objectives.hpp"

namespace wsnloc {

/// Mean localisation error normalised by the radius, in percent.
double ales(const Placement& placement, std::span<const Point> ground_truth, double radius);

/// Mean advantage of `ours` over each comparison value (percentage points).
double apg(std::span<const double> others, double ours);

struct ConfidenceInterval {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Two-sided quantile t such that P(T > t) = upper_tail for Student's t.
double student_t_upper_quantile(double upper_tail, double dof);

/// mean +- (S / sqrt(n)) * t_{alpha/2}(n - 1) with the n - 1 sample variance.
/// Throws InvalidArgument for fewer than two samples.
ConfidenceInterval confidence_interval(std::span<const double> samples, double alpha = 0.05);

}  // namespace wsnloc
