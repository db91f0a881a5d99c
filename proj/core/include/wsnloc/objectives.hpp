#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsnloc/demn.hpp"
#include "wsnloc/dvhop.hpp"
#include "wsnloc/geometry.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"

namespace wsnloc {

/// Candidate coordinates for every unknown node; entry k belongs to network
/// node n_anchors + k.
using Placement = std::vector<Point>;

struct ObjectiveValues {
  double f1 = 0.0;  // m^2
  double f2 = 0.0;  // hops^2

  friend bool operator==(const ObjectiveValues&, const ObjectiveValues&) = default;
};

/// Dense (anchor, unknown) -> estimate map. Unreachable pairs are absent.
class DistanceTable {
 public:
  DistanceTable(std::size_t n_anchors, std::size_t n_unknowns)
      : n_anchors_(n_anchors), n_unknowns_(n_unknowns), entries_(n_anchors * n_unknowns) {}

  std::size_t n_anchors() const { return n_anchors_; }
  std::size_t n_unknowns() const { return n_unknowns_; }

  /// `unknown` is the placement index (0-based among unknowns).
  const std::optional<DistanceEstimate>& at(std::size_t anchor, std::size_t unknown) const {
    return entries_[unknown * n_anchors_ + anchor];
  }
  void set(std::size_t anchor, std::size_t unknown, DistanceEstimate estimate) {
    entries_[unknown * n_anchors_ + anchor] = estimate;
  }
  std::size_t count(EstimateSource source) const;

 private:
  std::size_t n_anchors_;
  std::size_t n_unknowns_;
  std::vector<std::optional<DistanceEstimate>> entries_;
};

enum class EstimatorMode {
  Demn,         // DEMN where applicable, hop-count estimate elsewhere
  ClassicOnly,  // hop-count estimate everywhere
};

DistanceTable distance_table(const Network& network, const HopMatrix& hops, const UpperBoundModel& ub_model,
                             EstimatorMode mode = EstimatorMode::Demn);

/// Squared range residuals summed over all unknowns and their tabulated anchors.
double f1(const Placement& placement, const DistanceTable& table, std::span<const Point> anchors);

/// Anchors at their true positions followed by the placement.
std::vector<Point> assemble_nodes(const Placement& placement, const Network& network);

/// Hop counts the candidate geometry would produce.
HopMatrix predicted_hops(const Placement& placement, const Network& network);

/// Stand-in for an unreachable predicted hop: ceil(area diagonal / R) + 1.
int hop_penalty(const Network& network);

/// Squared hop differences over unordered pairs with real hop < 3 and at
/// least one unknown endpoint. Unreachable predictions count as `penalty`.
double f2(const HopMatrix& predicted, const HopMatrix& real, std::size_t n_anchors, int penalty);

/// Precomputed f2 for repeated evaluation. Each call works on its own
/// scratch buffers so one instance can be shared across threads.
class HopLoss {
 public:
  HopLoss(const Network& network, const HopMatrix& real);

  double operator()(const Placement& placement) const;
  int penalty() const { return penalty_; }

 private:
  struct Pair {
    std::uint32_t a;
    std::uint32_t b;
    int real;
  };

  std::vector<Point> anchors_;
  double radius_;
  std::size_t n_;
  int penalty_;
  std::vector<Pair> pairs_;
};

}  // namespace wsnloc
