#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsnloc/geometry.hpp"

namespace wsnloc {

class Network;

/// All-pairs minimum hop counts. Symmetric with a zero diagonal.
class HopMatrix {
 public:
  static constexpr int unreachable = -1;

  HopMatrix() = default;
  explicit HopMatrix(std::size_t n) : n_(n), hops_(n * n, unreachable) {
    for (std::size_t i = 0; i < n; ++i) hops_[i * n + i] = 0;
  }

  std::size_t size() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return hops_[i * n_ + j]; }
  bool reachable(std::size_t i, std::size_t j) const { return hops_[i * n_ + j] != unreachable; }
  void set(std::size_t i, std::size_t j, int hops) { hops_[i * n_ + j] = hops; }

  friend bool operator==(const HopMatrix&, const HopMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> hops_;
};

/// Breadth-first search from every node over the unit-disk graph
/// (edge iff within_radius).
HopMatrix hop_matrix(std::span<const Point> nodes, double radius);
HopMatrix hop_matrix(const Network& network);

}  // namespace wsnloc
