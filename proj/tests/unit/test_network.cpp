#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "wsnloc/errors.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/random.hpp"

using namespace wsnloc;

TEST_CASE("random network of 100 nodes with 20 anchors") {
  const Network net = generate_network(TopologyShape{}, 100, 20, 25.0, Area{}, 7);
  CHECK(net.size() == 100);
  CHECK(net.n_anchors() == 20);
  CHECK(net.n_unknowns() == 80);
  for (Point p : net.positions()) CHECK(net.area().contains(p));
}

TEST_CASE("two-node network is the smallest legal partition") {
  const Network net = generate_network(TopologyShape{}, 2, 1, 25.0, Area{}, 3);
  CHECK(net.size() == 2);
  CHECK(net.n_anchors() == 1);
  CHECK(net.n_unknowns() == 1);
}

TEST_CASE("annulus with inner radius beyond outer is an empty mask") {
  TopologyShape s = TopologyShape::of(ShapeKind::OShape);
  s.inner_radius_fraction = 0.5;
  s.outer_radius_fraction = 0.3;
  CHECK_THROWS_AS(generate_network(s, 10, 2, 25.0, Area{}, 1), GenerationError);
}

TEST_CASE("generation rejects bad partitions") {
  CHECK_THROWS_AS(generate_network(TopologyShape{}, 10, 10, 25.0, Area{}, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_network(TopologyShape{}, 10, 0, 25.0, Area{}, 1), InvalidArgument);
}

TEST_CASE("generation is seed deterministic") {
  for (ShapeKind k : {ShapeKind::Random, ShapeKind::CShape, ShapeKind::OShape, ShapeKind::XShape}) {
    const auto s = TopologyShape::of(k);
    const Network a = generate_network(s, 60, 10, 30.0, Area{}, 11);
    const Network b = generate_network(s, 60, 10, 30.0, Area{}, 11);
    const Network c = generate_network(s, 60, 10, 30.0, Area{}, 12);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    for (Point p : a.positions()) CHECK(s.contains(p, a.area()));
  }
}

TEST_CASE("shape masks") {
  const Area area{};
  const auto c = TopologyShape::of(ShapeKind::CShape);
  CHECK(c.contains({10, 50}, area));
  CHECK_FALSE(c.contains({90, 50}, area));
  CHECK(c.contains({90, 10}, area));
  const auto o = TopologyShape::of(ShapeKind::OShape);
  CHECK_FALSE(o.contains({50, 50}, area));
  CHECK(o.contains({50, 85}, area));
  CHECK_FALSE(o.contains({2, 2}, area));
  const auto x = TopologyShape::of(ShapeKind::XShape);
  CHECK(x.contains({50, 50}, area));
  CHECK(x.contains({10, 90}, area));
  CHECK_FALSE(x.contains({50, 5}, area));
  CHECK(parse_shape_kind("x") == ShapeKind::XShape);
  CHECK(to_string(ShapeKind::CShape) == "c");
}

TEST_CASE("network file round trip is bit exact") {
  const Network net = generate_network(TopologyShape{}, 100, 20, 25.0, Area{}, 99);
  const auto path = std::filesystem::temp_directory_path() / "wsnloc_roundtrip.json";
  save_network(net, path);
  const Network back = load_network(path);
  std::filesystem::remove(path);
  CHECK(back == net);
  CHECK(parse_network(format_network(net)) == net);
}

TEST_CASE("network file errors") {
  CHECK_THROWS_AS(parse_network(R"({"area":[100,100],"radius":25,"n_anchors":3,"nodes":[[1,1],[2,2],[3,3]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network(R"({"area":[100,100],"radius":25,"n_anchors":1,"nodes":[[1,1],[120,2]]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_network("not json"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"area":[100,100],"radius":25,"n_anchors":1})"), ParseError);
  try {
    parse_network(R"({"area":[100,100],"radius":25,"n_anchors":1,"nodes":[[1,1],[120,2]]})");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("nodes[1]") != std::string::npos);
  }
}

TEST_CASE("chain hop matrix") {
  const std::vector<Point> nodes{{0, 0}, {20, 0}, {40, 0}};
  const HopMatrix h = hop_matrix(nodes, 25.0);
  const int expected[3][3] = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(h(i, j) == expected[i][j]);
}

TEST_CASE("distance exactly R is one hop") {
  const std::vector<Point> nodes{{0, 0}, {25, 0}};
  CHECK(hop_matrix(nodes, 25.0)(0, 1) == 1);
  const std::vector<Point> far{{0, 0}, {25.000001, 0}};
  CHECK_FALSE(hop_matrix(far, 25.0).reachable(0, 1));
}

TEST_CASE("hop matrix matches Floyd-Warshall and basic properties") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(29);
    const double radius = rng.uniform(15.0, 45.0);
    const Network net = generate_network(TopologyShape{}, n, 1, radius, Area{}, 1000 + trial);
    const HopMatrix h = hop_matrix(net);
    const std::vector<Point> pts(net.positions().begin(), net.positions().end());
    REQUIRE(oracle::equals(h, oracle::floyd_warshall(pts, radius)));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(h(i, i) == 0);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(h(i, j) == h(j, i));
        if (h.reachable(i, j)) CHECK(distance(pts[i], pts[j]) <= h(i, j) * radius + 1e-9);
      }
    }
  }
}
