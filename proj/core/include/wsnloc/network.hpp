#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/geometry.hpp"

namespace wsnloc {

enum class ShapeKind { Random, CShape, OShape, XShape };

std::string_view to_string(ShapeKind kind);
ShapeKind parse_shape_kind(std::string_view name);

/// Deployment mask. Fractions are relative to the area; the defaults give the
/// four layouts used for evaluation (full square, C, annulus, X).
struct TopologyShape {
  ShapeKind kind = ShapeKind::Random;
  // C: notch cut from the right edge, centred vertically.
  double notch_width_fraction = 0.6;
  double notch_height_fraction = 0.5;
  // O: annulus radii as fractions of min(width, height).
  double outer_radius_fraction = 0.5;
  double inner_radius_fraction = 0.2;
  // X: half-width of each diagonal band as a fraction of min(width, height).
  double band_half_width_fraction = 0.15;

  static TopologyShape of(ShapeKind kind) {
    TopologyShape s;
    s.kind = kind;
    return s;
  }

  bool contains(Point p, const Area& area) const;
  /// False when the parameters describe an empty mask.
  bool has_area(const Area& area) const;
};

/// Node layout: anchors occupy indices [0, n_anchors), unknowns the rest.
/// Immutable once constructed; the constructor enforces the invariants.
class Network {
 public:
  Network(std::vector<Point> positions, std::size_t n_anchors, double radius, Area area);

  std::size_t size() const { return positions_.size(); }
  std::size_t n_anchors() const { return n_anchors_; }
  std::size_t n_unknowns() const { return positions_.size() - n_anchors_; }
  double radius() const { return radius_; }
  const Area& area() const { return area_; }

  std::span<const Point> positions() const { return positions_; }
  std::span<const Point> anchors() const { return std::span(positions_).first(n_anchors_); }
  std::span<const Point> unknowns() const { return std::span(positions_).subspan(n_anchors_); }
  Point position(std::size_t node) const { return positions_.at(node); }
  bool is_anchor(std::size_t node) const { return node < n_anchors_; }

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<Point> positions_;
  std::size_t n_anchors_;
  double radius_;
  Area area_;
};

/// Uniform rejection sampling over the shape mask. The first `n_anchors`
/// points become anchors. Throws GenerationError if the mask is empty or a
/// node cannot be placed within the attempt budget.
Network generate_network(const TopologyShape& shape, std::size_t n, std::size_t n_anchors, double radius,
                         const Area& area, std::uint64_t seed);

// Network file: {"area": [w, h], "radius": R, "n_anchors": k, "nodes": [[x, y], ...]}
std::string format_network(const Network& network);
Network parse_network(std::string_view text);
void save_network(const Network& network, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace wsnloc
