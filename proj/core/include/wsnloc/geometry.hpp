#pragma once

#include <cmath>

namespace wsnloc {

/// Planar position in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Link predicate shared by every graph built in the library: two nodes are
/// neighbours iff their separation is at most `radius` (inclusive).
inline bool within_radius(Point a, Point b, double radius) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= radius * radius;
}

/// Deployment rectangle anchored at the origin: [0, width] x [0, height].
struct Area {
  double width = 100.0;
  double height = 100.0;

  bool contains(Point p) const { return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height; }
  double diagonal() const { return std::hypot(width, height); }
  double min_side() const { return width < height ? width : height; }

  friend bool operator==(const Area&, const Area&) = default;
};

}  // namespace wsnloc
