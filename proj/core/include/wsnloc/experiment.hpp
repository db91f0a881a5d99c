#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsnloc/localize.hpp"
#include "wsnloc/metrics.hpp"
#include "wsnloc/network.hpp"
#include "wsnloc/nsga2.hpp"

namespace wsnloc {

struct ExperimentConfig {
  TopologyShape shape;
  std::size_t n_nodes = 100;
  Area area;
  std::vector<std::size_t> anchor_counts{5, 10, 15, 20, 25, 30};
  std::vector<double> radii{25.0, 30.0, 35.0, 40.0};
  std::size_t repeats = 50;
  std::vector<Method> methods{Method::DvHop, Method::DemnHop};
  GaConfig ga;
  std::uint64_t seed_base = 2024;
  std::size_t workers = 1;
  /// When false the seconds column is written as 0 so result files depend
  /// only on the seeds.
  bool record_timing = true;

  void validate() const;
};

// Config file: JSON object mirroring ExperimentConfig, e.g.
// {"shape": "random", "n": 100, "area": [100, 100], "anchor_counts": [10, 20],
//  "radii": [25, 40], "repeats": 5, "methods": ["dvhop", "demn-hop"],
//  "ga": {"population_size": 20, "max_iter": 500, "pc": 0.9, "pm": 0.1, "seed": 1},
//  "seed_base": 2024, "workers": 1, "record_timing": true}
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string format_experiment_config(const ExperimentConfig& config);

/// Worker count after applying the WSNLOC_WORKERS environment override.
std::size_t resolve_workers(const ExperimentConfig& config);

/// Network seed shared by every method within one (shape, N_a, R, repeat) cell.
std::uint64_t cell_seed(std::uint64_t seed_base, ShapeKind shape, std::size_t n_anchors, double radius,
                        std::size_t repeat);

struct ResultRow {
  ShapeKind shape = ShapeKind::Random;
  Method method = Method::DvHop;
  std::size_t n_anchors = 0;
  double radius = 0.0;
  std::size_t repeat = 0;
  std::optional<double> ales_percent;  // empty: the method failed on this repeat
  double seconds = 0.0;
  std::string error;                   // not persisted

  friend bool operator==(const ResultRow& a, const ResultRow& b) {
    return a.shape == b.shape && a.method == b.method && a.n_anchors == b.n_anchors && a.radius == b.radius &&
           a.repeat == b.repeat && a.ales_percent == b.ales_percent && a.seconds == b.seconds;
  }
};

struct CellSummary {
  ShapeKind shape = ShapeKind::Random;
  Method method = Method::DvHop;
  std::size_t n_anchors = 0;
  double radius = 0.0;
  std::size_t samples = 0;
  std::size_t errors = 0;
  std::optional<double> mean_ales;
  std::optional<double> ala;
  std::optional<ConfidenceInterval> ci;  // empty with fewer than two samples
  double seconds = 0.0;
  /// (other method, mean ALEs of other - mean ALEs of this) in the same cell.
  std::vector<std::pair<Method, double>> apg_vs;
};

struct MethodOverview {
  Method method = Method::DvHop;
  std::size_t cells = 0;
  double mean_ales = 0.0;
  double ala = 0.0;
  std::vector<std::pair<Method, double>> apg_vs;
};

struct ExperimentReport {
  std::vector<ResultRow> rows;
  std::vector<CellSummary> cells;
  std::vector<MethodOverview> overview;
};

/// Runs every (N_a, R, repeat) cell on a freshly generated network and every
/// method on that network. Failures are recorded per row, never thrown.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Groups rows by (shape, method, N_a, R) in key order.
std::vector<CellSummary> summarize(std::span<const ResultRow> rows, double alpha = 0.05);
/// Per-method averages over cells. APG pairs only cells both methods completed.
std::vector<MethodOverview> overview(std::span<const CellSummary> cells);

// Results CSV: shape,method,n_anchors,radius,repeat,ales_percent,seconds
std::string format_results_csv(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_results_csv(std::string_view text);
void write_results_csv(std::span<const ResultRow> rows, const std::filesystem::path& path);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

/// JSON summary: {"cells": [...], "overview": [...]}.
std::string format_summary(std::span<const CellSummary> cells, std::span<const MethodOverview> overview);
/// Fixed-width text table of the cells.
std::string format_summary_table(std::span<const CellSummary> cells);

}  // namespace wsnloc
