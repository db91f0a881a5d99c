#include "wsnloc/objectives.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "wsnloc/errors.hpp"

namespace wsnloc {

std::size_t DistanceTable::count(EstimateSource source) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e && e->source == source;
  return n;
}

DistanceTable distance_table(const Network& network, const HopMatrix& hops, const UpperBoundModel& ub_model,
                             EstimatorMode mode) {
  const std::size_t n_anchors = network.n_anchors();
  DistanceTable table(n_anchors, network.n_unknowns());
  if (mode == EstimatorMode::Demn) {
    for (const DistanceEstimate& e : demn_estimates(network, hops, ub_model)) table.set(e.anchor, e.unknown - n_anchors, e);
  }
  const AvgHopDistance avg = avg_hop_distance(network, hops);
  for (std::size_t k = 0; k < network.n_unknowns(); ++k) {
    for (std::size_t i = 0; i < n_anchors; ++i) {
      if (table.at(i, k) || !avg.defined(i) || !hops.reachable(i, n_anchors + k)) continue;
      table.set(i, k, classic_distance(avg, hops, i, n_anchors + k));
    }
  }
  return table;
}

double f1(const Placement& placement, const DistanceTable& table, std::span<const Point> anchors) {
  double loss = 0.0;
  for (std::size_t k = 0; k < placement.size(); ++k) {
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const auto& estimate = table.at(i, k);
      if (!estimate) continue;
      const double residual = distance(anchors[i], placement[k]) - estimate->distance;
      loss += residual * residual;
    }
  }
  return loss;
}

std::vector<Point> assemble_nodes(const Placement& placement, const Network& network) {
  if (placement.size() != network.n_unknowns()) {
    throw InvalidArgument("placement has " + std::to_string(placement.size()) + " nodes, network has " +
                          std::to_string(network.n_unknowns()) + " unknowns");
  }
  std::vector<Point> nodes(network.anchors().begin(), network.anchors().end());
  nodes.insert(nodes.end(), placement.begin(), placement.end());
  return nodes;
}

HopMatrix predicted_hops(const Placement& placement, const Network& network) {
  return hop_matrix(assemble_nodes(placement, network), network.radius());
}

int hop_penalty(const Network& network) {
  return static_cast<int>(std::ceil(network.area().diagonal() / network.radius())) + 1;
}

double f2(const HopMatrix& predicted, const HopMatrix& real, std::size_t n_anchors, int penalty) {
  if (predicted.size() != real.size()) throw InvalidArgument("hop matrices differ in size");
  double loss = 0.0;
  const std::size_t n = real.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = std::max(i + 1, n_anchors); k < n; ++k) {
      const int r = real(i, k);
      if (r == HopMatrix::unreachable || r >= 3) continue;
      const int p = predicted.reachable(i, k) ? predicted(i, k) : penalty;
      loss += static_cast<double>((r - p) * (r - p));
    }
  }
  return loss;
}

HopLoss::HopLoss(const Network& network, const HopMatrix& real)
    : anchors_(network.anchors().begin(), network.anchors().end()),
      radius_(network.radius()),
      n_(network.size()),
      penalty_(hop_penalty(network)) {
  if (real.size() != n_) throw InvalidArgument("hop matrix does not match the network");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = std::max(i + 1, network.n_anchors()); k < n_; ++k) {
      const int r = real(i, k);
      if (r != HopMatrix::unreachable && r < 3) {
        pairs_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k), r});
      }
    }
  }
}

double HopLoss::operator()(const Placement& placement) const {
  if (anchors_.size() + placement.size() != n_) throw InvalidArgument("placement does not match the network");
  const std::size_t words = (n_ + 63) / 64;
  std::vector<Point> nodes(anchors_);
  nodes.insert(nodes.end(), placement.begin(), placement.end());

  // Adjacency rows as bitsets; BFS advances one whole frontier per step.
  std::vector<std::uint64_t> adjacency(n_ * words, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (within_radius(nodes[i], nodes[j], radius_)) {
        adjacency[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
        adjacency[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }

  std::vector<int> hops(n_ * n_, HopMatrix::unreachable);
  std::vector<std::uint64_t> visited(words), frontier(words), next(words);
  for (std::size_t s = 0; s < n_; ++s) {
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[s / 64] = frontier[s / 64] = std::uint64_t{1} << (s % 64);
    hops[s * n_ + s] = 0;
    for (int level = 1;; ++level) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t w = 0; w < words; ++w) {
        for (std::uint64_t bits = frontier[w]; bits != 0; bits &= bits - 1) {
          const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          const std::uint64_t* row = &adjacency[u * words];
          for (std::size_t x = 0; x < words; ++x) next[x] |= row[x];
        }
      }
      bool any = false;
      for (std::size_t w = 0; w < words; ++w) {
        next[w] &= ~visited[w];
        visited[w] |= next[w];
        any = any || next[w] != 0;
        for (std::uint64_t bits = next[w]; bits != 0; bits &= bits - 1) {
          hops[s * n_ + w * 64 + static_cast<std::size_t>(std::countr_zero(bits))] = level;
        }
      }
      if (!any) break;
      frontier.swap(next);
    }
  }

  double loss = 0.0;
  for (const Pair& p : pairs_) {
    const int h = hops[p.a * n_ + p.b];
    const int predicted = h == HopMatrix::unreachable ? penalty_ : h;
    loss += static_cast<double>((p.real - predicted) * (p.real - predicted));
  }
  return loss;
}

}  // namespace wsnloc
