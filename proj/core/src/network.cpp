#include "wsnloc/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wsnloc/errors.hpp"
#include "wsnloc/random.hpp"

namespace wsnloc {

namespace {

constexpr std::size_t kAttemptsPerNode = 100000;

double distance_to_line(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::abs(dy * (p.x - a.x) - dx * (p.y - a.y)) / std::hypot(dx, dy);
}

std::string describe(Point p) {
  std::ostringstream out;
  out.precision(17);
  out << "(" << p.x << ", " << p.y << ")";
  return out.str();
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Random: return "random";
    case ShapeKind::CShape: return "c";
    case ShapeKind::OShape: return "o";
    case ShapeKind::XShape: return "x";
  }
  return "random";
}

ShapeKind parse_shape_kind(std::string_view name) {
  if (name == "random") return ShapeKind::Random;
  if (name == "c" || name == "C" || name == "c-shape") return ShapeKind::CShape;
  if (name == "o" || name == "O" || name == "o-shape") return ShapeKind::OShape;
  if (name == "x" || name == "X" || name == "x-shape") return ShapeKind::XShape;
  throw InvalidArgument("unknown shape '" + std::string(name) + "' (expected random, c, o or x)");
}

bool TopologyShape::contains(Point p, const Area& area) const {
  if (!area.contains(p)) return false;
  const double w = area.width;
  const double h = area.height;
  switch (kind) {
    case ShapeKind::Random:
      return true;
    case ShapeKind::CShape: {
      const double notch_left = w * (1.0 - notch_width_fraction);
      const double notch_bottom = h * (1.0 - notch_height_fraction) / 2.0;
      const double notch_top = h - notch_bottom;
      return !(p.x > notch_left && p.y > notch_bottom && p.y < notch_top);
    }
    case ShapeKind::OShape: {
      const double r = std::hypot(p.x - w / 2.0, p.y - h / 2.0);
      const double s = area.min_side();
      return r <= outer_radius_fraction * s && r >= inner_radius_fraction * s;
    }
    case ShapeKind::XShape: {
      const double half = band_half_width_fraction * area.min_side();
      return distance_to_line(p, {0.0, 0.0}, {w, h}) <= half || distance_to_line(p, {0.0, h}, {w, 0.0}) <= half;
    }
  }
  return false;
}

bool TopologyShape::has_area(const Area& area) const {
  if (area.width <= 0.0 || area.height <= 0.0) return false;
  switch (kind) {
    case ShapeKind::Random:
      return true;
    case ShapeKind::CShape:
      return notch_width_fraction < 1.0 || notch_height_fraction < 1.0;
    case ShapeKind::OShape:
      return outer_radius_fraction > 0.0 && inner_radius_fraction < outer_radius_fraction;
    case ShapeKind::XShape:
      return band_half_width_fraction > 0.0;
  }
  return false;
}

Network::Network(std::vector<Point> positions, std::size_t n_anchors, double radius, Area area)
    : positions_(std::move(positions)), n_anchors_(n_anchors), radius_(radius), area_(area) {
  if (!(area_.width > 0.0) || !(area_.height > 0.0)) throw InvalidArgument("network area must be positive");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw InvalidArgument("communication radius must be positive");
  if (n_anchors_ == 0 || n_anchors_ >= positions_.size()) {
    throw InvalidArgument("anchor count " + std::to_string(n_anchors_) + " must be in [1, " +
                          std::to_string(positions_.size()) + ")");
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!area_.contains(positions_[i])) {
      throw InvalidArgument("node " + std::to_string(i) + " at " + describe(positions_[i]) + " lies outside the area");
    }
  }
}

Network generate_network(const TopologyShape& shape, std::size_t n, std::size_t n_anchors, double radius,
                         const Area& area, std::uint64_t seed) {
  if (n_anchors == 0 || n_anchors >= n) {
    throw InvalidArgument("anchor count must be in [1, n)");
  }
  if (!shape.has_area(area)) {
    throw GenerationError("shape mask '" + std::string(to_string(shape.kind)) + "' has no area");
  }
  Rng rng(seed);
  std::vector<Point> positions;
  positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kAttemptsPerNode; ++attempt) {
      const Point p{rng.uniform(0.0, area.width), rng.uniform(0.0, area.height)};
      if (shape.contains(p, area)) {
        positions.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw GenerationError("could not place node " + std::to_string(i) + " inside the '" +
                            std::string(to_string(shape.kind)) + "' mask");
    }
  }
  return Network(std::move(positions), n_anchors, radius, area);
}

std::string format_network(const Network& network) {
  nlohmann::ordered_json doc;
  doc["area"] = {network.area().width, network.area().height};
  doc["radius"] = network.radius();
  doc["n_anchors"] = network.n_anchors();
  auto nodes = nlohmann::ordered_json::array();
  for (const Point& p : network.positions()) nodes.push_back({p.x, p.y});
  doc["nodes"] = std::move(nodes);
  return doc.dump(1) + "\n";
}

Network parse_network(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("network file is not valid JSON: ") + e.what());
  }

  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("network file: missing field '") + key + "'");
    return doc[key];
  };
  auto number = [](const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError("network file: " + where + " is not a number");
    return v.get<double>();
  };

  const auto& area_json = require("area");
  if (!area_json.is_array() || area_json.size() != 2) throw ParseError("network file: 'area' must be [width, height]");
  const Area area{number(area_json[0], "area[0]"), number(area_json[1], "area[1]")};
  if (!(area.width > 0.0) || !(area.height > 0.0)) throw ParseError("network file: 'area' must be positive");

  const double radius = number(require("radius"), "radius");
  if (!(radius > 0.0)) throw ParseError("network file: 'radius' must be positive");

  const auto& anchors_json = require("n_anchors");
  if (!anchors_json.is_number_unsigned()) throw ParseError("network file: 'n_anchors' must be a non-negative integer");
  const auto n_anchors = anchors_json.get<std::size_t>();

  const auto& nodes_json = require("nodes");
  if (!nodes_json.is_array()) throw ParseError("network file: 'nodes' must be an array");
  std::vector<Point> positions;
  positions.reserve(nodes_json.size());
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const auto where = "nodes[" + std::to_string(i) + "]";
    const auto& node = nodes_json[i];
    if (!node.is_array() || node.size() != 2) throw ParseError("network file: " + where + " must be [x, y]");
    const Point p{number(node[0], where + "[0]"), number(node[1], where + "[1]")};
    if (!area.contains(p)) throw ParseError("network file: " + where + " " + describe(p) + " lies outside the area");
    positions.push_back(p);
  }
  if (n_anchors == 0 || n_anchors >= positions.size()) {
    throw ParseError("network file: n_anchors = " + std::to_string(n_anchors) + " must be in [1, " +
                     std::to_string(positions.size()) + ")");
  }
  return Network(std::move(positions), n_anchors, radius, area);
}

void save_network(const Network& network, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << format_network(network);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str());
}

}  // namespace wsnloc
