#include "wsnloc/hop_matrix.hpp"

#include "wsnloc/network.hpp"

namespace wsnloc {

HopMatrix hop_matrix(std::span<const Point> nodes, double radius) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (within_radius(nodes[i], nodes[j], radius)) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
    }
  }

  HopMatrix hops(n);
  std::vector<std::size_t> queue;
  queue.reserve(n);
  for (std::size_t source = 0; source < n; ++source) {
    queue.clear();
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      const int next = hops(source, u) + 1;
      for (std::size_t v : adjacency[u]) {
        if (!hops.reachable(source, v)) {
          hops.set(source, v, next);
          queue.push_back(v);
        }
      }
    }
  }
  return hops;
}

HopMatrix hop_matrix(const Network& network) { return hop_matrix(network.positions(), network.radius()); }

}  // namespace wsnloc
