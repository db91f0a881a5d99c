// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wsnloc/demn.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/hop_matrix.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/nsga2.hpp"
#include "wsnloc/objectives.hpp"
#include "wsnloc/random.hpp"

using namespace wsnloc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

/// 7 separations in [R+1, 2R-1] for each radius and hop count: 56 cases.
std::vector<CrossDomainCase> integral_grid() {
  std::vector<CrossDomainCase> grid;
  const auto ub = UpperBoundModel::hop_times_radius();
  for (double r : {25.0, 30.0, 35.0, 40.0})
    for (int m : {1, 2})
      for (int s = 0; s < 7; ++s) grid.push_back({(r + 1.0) + (r - 2.0) * s / 6.0, r, m, ub(m, r)});
  return grid;
}

// Area of one region by uniform sampling over its own bounding box, using
// only the membership predicate.
double region_area_mc(double x0, double x1, double y1, const std::function<bool(double, double)>& inside,
                      std::size_t samples, std::uint64_t seed) {
  if (!(x1 > x0) || !(y1 > 0.0)) return 0.0;
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = rng.uniform(x0, x1);
    const double y = rng.uniform(0.0, y1);
    hits += inside(x, y);
  }
  return (x1 - x0) * y1 * static_cast<double>(hits) / static_cast<double>(samples);
}

RegionAreas region_areas_mc(const CrossDomainCase& c, std::size_t samples, std::uint64_t seed) {
  const double d = c.d, r = c.radius, ub = c.ub;
  const double xs = crossing_abscissa(c);
  const double lo = std::max(d - r, -ub);
  const double hi = std::min(ub, d + r);
  auto arc_height = [](double centre, double rho, double a, double b) {
    const double nearest = std::clamp(centre, a, b);
    return std::sqrt(std::max(0.0, rho * rho - (nearest - centre) * (nearest - centre)));
  };
  RegionAreas out;
  out.d1 = region_area_mc(
      lo, xs, arc_height(d, r, lo, xs), [&](double x, double y) { return (x - d) * (x - d) + y * y <= r * r; },
      samples, seed);
  out.d2 = region_area_mc(
      xs, hi, arc_height(0.0, ub, xs, hi), [&](double x, double y) { return x * x + y * y <= ub * ub; }, samples,
      seed + 1);
  if (c.m == 2 && d / 2.0 < r) {
    out.d3 = region_area_mc(
        d / 2.0, r, arc_height(d, r, d / 2.0, r),
        [&](double x, double y) { return x * x + y * y >= r * r && (x - d) * (x - d) + y * y <= r * r; }, samples,
        seed + 2);
  }
  return out;
}

Outcome criterion_integrals(const std::vector<CrossDomainCase>& grid) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& c = grid[i];
    const double analytic = expected_distance(c);
    const auto mc = monte_carlo_expected_distance(c, 10'000'000, 1000 + i);
    const double rel = std::abs(analytic - mc.mean) / mc.mean;
    worst = std::max(worst, rel);
    if (rel > 0.005) {
      ++failures;
      std::printf("    case d=%.3f R=%g m=%d ub=%g: analytic %.6f mc %.6f (rel %.2e)\n", c.d, c.radius, c.m, c.ub,
                  analytic, mc.mean, rel);
    }
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 120.0,
          fmt("%zu cases, 1e7 samples each, worst relative error %.2e (limit 5e-3), %.1f s (limit 120 s)",
              grid.size(), worst, secs)};
}

Outcome criterion_areas(const std::vector<CrossDomainCase>& grid) {
  double worst = 0.0;
  std::size_t failures = 0;
  std::size_t regions = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& c = grid[i];
    const RegionAreas a = region_areas(c);
    const RegionAreas m = region_areas_mc(c, 4'000'000, 50'000 + 10 * i);
    const double got[3] = {a.d1, a.d2, a.d3};
    const double ref[3] = {m.d1, m.d2, m.d3};
    for (int r = 0; r < 3; ++r) {
      if (got[r] < 0.0) ++failures;
      if (got[r] == 0.0 && ref[r] == 0.0) continue;
      ++regions;
      const double rel = std::abs(got[r] - ref[r]) / std::max(ref[r], 1e-300);
      worst = std::max(worst, rel);
      if (rel > 0.005) {
        ++failures;
        std::printf("    case d=%.3f R=%g m=%d: D%d analytic %.6f mc %.6f (rel %.2e)\n", c.d, c.radius, c.m, r + 1,
                    got[r], ref[r], rel);
      }
    }
  }
  return {failures == 0, fmt("%zu non-empty regions, worst relative error %.2e (limit 5e-3)", regions, worst)};
}

Outcome criterion_hop_loss_zero() {
  std::size_t nonzero = 0;
  const ShapeKind shapes[] = {ShapeKind::Random, ShapeKind::CShape, ShapeKind::OShape, ShapeKind::XShape};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t anchors = 5 + 5 * (s % 6);
    const double radius = 25.0 + 5.0 * (s % 4);
    const Network net = generate_network(TopologyShape::of(shapes[s % 4]), 100, anchors, radius, Area{}, 7000 + s);
    const HopMatrix real = hop_matrix(net);
    const Placement truth(net.unknowns().begin(), net.unknowns().end());
    const double direct = f2(predicted_hops(truth, net), real, net.n_anchors(), hop_penalty(net));
    const double fast = HopLoss(net, real)(truth);
    if (direct != 0.0 || fast != 0.0) ++nonzero;
  }
  return {nonzero == 0, fmt("100 networks, %zu with non-zero f2 at ground truth", nonzero)};
}

Outcome criterion_graph_oracles() {
  std::size_t hop_mismatch = 0, pred_mismatch = 0, nds_mismatch = 0;
  Rng rng(8080);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 2 + rng.index(29);
    const std::size_t anchors = 1 + rng.index(n - 1);
    const double radius = rng.uniform(15.0, 45.0);
    const Network net = generate_network(TopologyShape{}, n, anchors, radius, Area{}, 9000 + s);
    const std::vector<Point> nodes(net.positions().begin(), net.positions().end());
    if (!oracle::equals(hop_matrix(net), oracle::floyd_warshall(nodes, radius))) ++hop_mismatch;
    Placement p(net.n_unknowns());
    for (Point& q : p) q = {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
    if (!oracle::equals(predicted_hops(p, net), oracle::floyd_warshall(assemble_nodes(p, net), radius))) {
      ++pred_mismatch;
    }
  }
  for (int set = 0; set < 1000; ++set) {
    std::vector<ObjectiveValues> pts(200);
    for (auto& q : pts) {
      if (set % 2 == 0) {
        q = {rng.uniform(), rng.uniform()};
      } else {
        q = {static_cast<double>(rng.index(15)), static_cast<double>(rng.index(15))};
      }
    }
    if (non_dominated_sort(pts) != oracle::peel_fronts(pts)) ++nds_mismatch;
  }
  return {hop_mismatch + pred_mismatch + nds_mismatch == 0,
          fmt("hop_matrix %zu/100 mismatches, predicted_hops %zu/100, non_dominated_sort %zu/1000", hop_mismatch,
              pred_mismatch, nds_mismatch)};
}

ExperimentConfig grid_config(std::vector<std::size_t> anchors, std::vector<double> radii, std::size_t repeats,
                             std::vector<Method> methods) {
  ExperimentConfig c;
  c.shape = TopologyShape::of(ShapeKind::Random);
  c.anchor_counts = std::move(anchors);
  c.radii = std::move(radii);
  c.repeats = repeats;
  c.methods = std::move(methods);
  c.ga.population_size = 20;
  c.ga.max_iter = 500;
  c.ga.pc = 0.9;
  c.ga.pm = 0.1;
  c.record_timing = false;
  return c;
}

using Means = std::map<std::pair<std::size_t, double>, std::map<Method, double>>;

Means cell_means(const ExperimentReport& report) {
  Means out;
  for (const auto& cell : report.cells)
    if (cell.mean_ales) out[{cell.n_anchors, cell.radius}][cell.method] = *cell.mean_ales;
  return out;
}

Outcome criterion_easiest_cell() {
  const auto t0 = Clock::now();
  const auto report = run_experiment(grid_config({30}, {40.0}, 10, {Method::DvHop, Method::DemnHop}));
  const double secs = seconds_since(t0);
  auto means = cell_means(report)[{30, 40.0}];
  if (!means.count(Method::DvHop) || !means.count(Method::DemnHop)) return {false, "missing cell means"};
  const double dv = means[Method::DvHop];
  const double ours = means[Method::DemnHop];
  const bool pass = std::abs(dv - 26.42) <= 10.0 && ours < dv && ours < 20.0 && secs < 900.0;
  return {pass, fmt("dvhop %.2f%% (band 16.42..36.42), demn-hop %.2f%% (< dvhop, < 20), %.1f s (limit 900 s)", dv,
                    ours, secs)};
}

Outcome criterion_ordering() {
  const auto report = run_experiment(grid_config({10, 20, 30}, {25.0, 40.0}, 5, {Method::DvHop, Method::DemnHop}));
  std::size_t cells = 0, wins = 0;
  std::string per_cell;
  for (auto& [key, m] : cell_means(report)) {
    if (!m.count(Method::DvHop) || !m.count(Method::DemnHop)) continue;
    ++cells;
    const bool win = m[Method::DemnHop] < m[Method::DvHop];
    wins += win;
    per_cell += fmt(" (%zu,%g):%.1f/%.1f", key.first, key.second, m[Method::DemnHop], m[Method::DvHop]);
  }
  const bool pass = cells == 6 && static_cast<double>(wins) >= 0.9 * static_cast<double>(cells);
  return {pass, fmt("demn-hop beats dvhop in %zu/%zu cells (need >= 90%%);", wins, cells) + per_cell};
}

Outcome criterion_ablation() {
  const auto report = run_experiment(
      grid_config({20}, {25.0}, 5, {Method::DvHop, Method::DemnHop, Method::Demn, Method::HopLoss}));
  auto m = cell_means(report)[{20, 25.0}];
  if (m.size() != 4) return {false, "missing cell means"};
  const double dv = m[Method::DvHop], combined = m[Method::DemnHop];
  const double lo = std::min(dv, combined), hi = std::max(dv, combined);
  auto between = [&](double v) { return v >= lo && v <= hi; };
  const bool pass = between(m[Method::Demn]) && between(m[Method::HopLoss]);
  return {pass, fmt("dvhop %.2f%%, demn %.2f%%, hop-loss %.2f%%, demn-hop %.2f%%", dv, m[Method::Demn],
                    m[Method::HopLoss], combined)};
}

Outcome criterion_determinism() {
  auto config = grid_config({10, 20}, {25.0, 40.0}, 2, all_methods());
  config.ga.max_iter = 100;
  const std::string a = format_results_csv(run_experiment(config).rows);
  const std::string b = format_results_csv(run_experiment(config).rows);
  config.workers = 3;
  const std::string c = format_results_csv(run_experiment(config).rows);
  return {a == b && a == c,
          fmt("%zu-byte CSV; rerun identical: %s; 3 workers identical: %s", a.size(), a == b ? "yes" : "no",
              a == c ? "yes" : "no")};
}

}  // namespace

int main() {
  const auto grid = integral_grid();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "DEMN expected distance vs Monte Carlo", [&] { return criterion_integrals(grid); }},
      {2, "region areas vs Monte Carlo", [&] { return criterion_areas(grid); }},
      {3, "hop loss is zero at ground truth", criterion_hop_loss_zero},
      {4, "graph and sorting oracles", criterion_graph_oracles},
      {5, "random N_a=30 R=40 reproduction band", criterion_easiest_cell},
      {6, "qualitative ordering over 6 cells", criterion_ordering},
      {7, "ablation direction at N_a=20 R=25", criterion_ablation},
      {8, "byte-identical result CSVs", criterion_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
