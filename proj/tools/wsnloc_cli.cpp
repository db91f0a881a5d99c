#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsnloc/demn.hpp"
#include "wsnloc/errors.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/localize.hpp"
#include "wsnloc/metrics.hpp"
#include "wsnloc/network.hpp"

using namespace wsnloc;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw wsnloc::Error("cannot open '" + path + "' for writing");
  std::fputs(text.c_str(), f);
  std::fclose(f);
}

struct GenerateOptions {
  std::string shape = "random";
  std::size_t n = 100;
  std::size_t anchors = 20;
  double radius = 25.0;
  double width = 100.0;
  double height = 100.0;
  std::uint64_t seed = 7;
  std::string out;
};

struct LocalizeOptions {
  std::string network;
  std::string method = "demn-hop";
  GaConfig ga;
  std::string out;
};

struct DemnCheckOptions {
  double d = 30.0;
  double radius = 25.0;
  double ub = 0.0;
  int m = 1;
  std::size_t mc_samples = 1000000;
  std::uint64_t seed = 1;
};

struct BenchmarkOptions {
  std::string config;
  std::string shape = "random";
  std::size_t n = 100;
  std::vector<std::size_t> anchors{30};
  std::vector<double> radii{40.0};
  std::size_t repeats = 10;
  std::vector<std::string> methods{"dvhop", "demn-hop"};
  std::size_t pop = 20;
  std::size_t iters = 500;
  double pc = 0.9;
  double pm = 0.1;
  std::uint64_t ga_seed = 1;
  std::uint64_t seed_base = 2024;
  std::size_t workers = 1;
  bool deterministic = false;
  std::string out = "results.csv";
  std::string summary;
};

struct ReportOptions {
  std::string results;
  std::string summary;
};

int run_generate(const GenerateOptions& o) {
  const Network net = generate_network(TopologyShape::of(parse_shape_kind(o.shape)), o.n, o.anchors, o.radius,
                                       Area{o.width, o.height}, o.seed);
  if (o.out.empty()) {
    std::cout << format_network(net);
  } else {
    save_network(net, o.out);
  }
  return 0;
}

int run_localize(const LocalizeOptions& o) {
  const Network net = load_network(o.network);
  const Method method = parse_method(o.method);
  const LocalizationResult result = localize(net, method, o.ga);

  nlohmann::ordered_json doc;
  doc["method"] = std::string(to_string(method));
  doc["ales_percent"] = ales(result.placement, net.unknowns(), net.radius());
  doc["demn_estimates"] = result.demn_estimates;
  doc["classic_estimates"] = result.classic_estimates;
  auto placement = nlohmann::ordered_json::array();
  for (const Point& p : result.placement) placement.push_back({p.x, p.y});
  doc["placement"] = std::move(placement);
  if (result.pareto) {
    doc["objectives"] = {{"f1", result.pareto->chosen.objectives.f1}, {"f2", result.pareto->chosen.objectives.f2}};
    auto history = nlohmann::ordered_json::array();
    for (const auto& h : result.pareto->history) history.push_back({h.generation, h.best_f1, h.best_f2});
    doc["history_columns"] = {"generation", "best_f1", "best_f2"};
    doc["history"] = std::move(history);
  }
  write_text(o.out, doc.dump(1) + "\n");
  std::cerr << to_string(method) << ": ALEs " << doc["ales_percent"].get<double>() << "%\n";
  return 0;
}

int run_demn_check(const DemnCheckOptions& o) {
  CrossDomainCase c{o.d, o.radius, o.m, o.ub > 0.0 ? o.ub : UpperBoundModel::hop_times_radius()(o.m, o.radius)};
  const CrossDomainIntegrals integrals = cross_domain_integrals(c);
  const double analytic = integrals.expected_distance();
  std::printf("case         d=%g R=%g m=%d ub=%g  x*=%.6f\n", c.d, c.radius, c.m, c.ub, crossing_abscissa(c));
  std::printf("areas        D1=%.6f D2=%.6f D3=%.6f\n", integrals.d1.area, integrals.d2.area, integrals.d3.area);
  std::printf("analytic     %.9f\n", analytic);
  if (o.mc_samples > 0) {
    const MonteCarloEstimate mc = monte_carlo_expected_distance(c, o.mc_samples, o.seed);
    std::printf("monte carlo  %.9f  (se %.2e, %zu/%zu accepted)\n", mc.mean, mc.standard_error, mc.accepted,
                mc.samples);
    std::printf("mc areas     D1=%.6f D2=%.6f D3=%.6f\n", mc.areas.d1, mc.areas.d2, mc.areas.d3);
    std::printf("rel diff     %.3e\n", std::abs(mc.mean - analytic) / analytic);
  }
  return 0;
}

int run_benchmark(const BenchmarkOptions& o) {
  ExperimentConfig config;
  if (!o.config.empty()) {
    config = load_experiment_config(o.config);
  } else {
    config.shape = TopologyShape::of(parse_shape_kind(o.shape));
    config.n_nodes = o.n;
    config.anchor_counts = o.anchors;
    config.radii = o.radii;
    config.repeats = o.repeats;
    config.methods.clear();
    for (const auto& m : o.methods) config.methods.push_back(parse_method(m));
    config.ga.population_size = o.pop;
    config.ga.max_iter = o.iters;
    config.ga.pc = o.pc;
    config.ga.pm = o.pm;
    config.ga.seed = o.ga_seed;
    config.seed_base = o.seed_base;
    config.workers = o.workers;
  }
  if (o.deterministic) config.record_timing = false;

  const ExperimentReport report = run_experiment(config);
  write_results_csv(report.rows, o.out);
  for (const auto& row : report.rows) {
    if (!row.error.empty()) {
      std::cerr << "warning: " << to_string(row.method) << " N_a=" << row.n_anchors << " R=" << row.radius
                << " repeat=" << row.repeat << ": " << row.error << "\n";
    }
  }
  if (!o.summary.empty()) write_text(o.summary, format_summary(report.cells, report.overview));
  std::cout << format_summary_table(report.cells);
  return 0;
}

int run_report(const ReportOptions& o) {
  const auto rows = read_results_csv(o.results);
  const auto cells = summarize(rows);
  const auto methods = overview(cells);
  if (!o.summary.empty()) write_text(o.summary, format_summary(cells, methods));
  std::cout << format_summary_table(cells);
  for (const auto& m : methods) {
    std::printf("%-9s ALA %.2f%% over %zu cells", std::string(to_string(m.method)).c_str(), m.ala, m.cells);
    for (const auto& [other, gain] : m.apg_vs) std::printf("  APG vs %s %.2f", std::string(to_string(other)).c_str(), gain);
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-free WSN localisation: DV-Hop, DEMN expected distances and hop-loss NSGA-II"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic network file");
  generate->add_option("--shape", gen.shape, "random, c, o or x")->capture_default_str();
  generate->add_option("--n", gen.n, "Number of nodes")->capture_default_str();
  generate->add_option("--anchors", gen.anchors, "Number of anchors (the first nodes)")->capture_default_str();
  generate->add_option("--radius", gen.radius, "Communication radius (m)")->capture_default_str();
  generate->add_option("--width", gen.width, "Area width (m)")->capture_default_str();
  generate->add_option("--height", gen.height, "Area height (m)")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output file (stdout if omitted)");

  LocalizeOptions loc;
  auto* localize_cmd = app.add_subcommand("localize", "Localise the unknown nodes of a network file");
  localize_cmd->add_option("--network", loc.network, "Network file")->required();
  localize_cmd->add_option("--method", loc.method, "dvhop, demn-hop, demn or hop-loss")->capture_default_str();
  localize_cmd->add_option("--pop", loc.ga.population_size, "Population size")->capture_default_str();
  localize_cmd->add_option("--iters", loc.ga.max_iter, "Generations")->capture_default_str();
  localize_cmd->add_option("--pc", loc.ga.pc, "Crossover probability")->capture_default_str();
  localize_cmd->add_option("--pm", loc.ga.pm, "Per-coordinate mutation probability")->capture_default_str();
  localize_cmd->add_option("--eta-c", loc.ga.eta_c, "SBX distribution index")->capture_default_str();
  localize_cmd->add_option("--eta-m", loc.ga.eta_m, "Mutation distribution index")->capture_default_str();
  localize_cmd->add_option("--seed", loc.ga.seed, "GA seed")->capture_default_str();
  localize_cmd->add_flag("--warm-start", loc.ga.warm_start, "Seed one individual with the least-squares placement");
  localize_cmd->add_option("--out", loc.out, "Output JSON (stdout if omitted)");

  DemnCheckOptions chk;
  auto* demn_check = app.add_subcommand("demn-check", "Compare the analytic DEMN expectation with Monte Carlo");
  demn_check->add_option("--d", chk.d, "Anchor separation (m)")->capture_default_str();
  demn_check->add_option("--radius", chk.radius, "Communication radius (m)")->capture_default_str();
  demn_check->add_option("--ub", chk.ub, "Hop upper bound (m); default m*R");
  demn_check->add_option("--m", chk.m, "Hop count, 1 or 2")->capture_default_str();
  demn_check->add_option("--mc-samples", chk.mc_samples, "Monte Carlo samples (0 to skip)")->capture_default_str();
  demn_check->add_option("--seed", chk.seed, "Monte Carlo seed")->capture_default_str();

  BenchmarkOptions bench;
  auto* benchmark = app.add_subcommand("benchmark", "Run an experiment grid and write the results CSV");
  benchmark->add_option("--config", bench.config, "Experiment config file (overrides the grid flags)");
  benchmark->add_option("--shape", bench.shape, "random, c, o or x")->capture_default_str();
  benchmark->add_option("--n", bench.n, "Nodes per network")->capture_default_str();
  benchmark->add_option("--anchors", bench.anchors, "Anchor counts")->capture_default_str();
  benchmark->add_option("--radii", bench.radii, "Radii (m)")->capture_default_str();
  benchmark->add_option("--repeats", bench.repeats, "Repeats per cell")->capture_default_str();
  benchmark->add_option("--methods", bench.methods, "Methods")->capture_default_str();
  benchmark->add_option("--pop", bench.pop, "Population size")->capture_default_str();
  benchmark->add_option("--iters", bench.iters, "Generations")->capture_default_str();
  benchmark->add_option("--pc", bench.pc, "Crossover probability")->capture_default_str();
  benchmark->add_option("--pm", bench.pm, "Mutation probability")->capture_default_str();
  benchmark->add_option("--ga-seed", bench.ga_seed, "GA seed")->capture_default_str();
  benchmark->add_option("--seed-base", bench.seed_base, "Base seed for network generation")->capture_default_str();
  benchmark->add_option("--workers", bench.workers, "Worker threads (env WSNLOC_WORKERS overrides)")
      ->capture_default_str();
  benchmark->add_flag("--deterministic", bench.deterministic, "Write 0 in the seconds column");
  benchmark->add_option("--out", bench.out, "Results CSV")->capture_default_str();
  benchmark->add_option("--summary", bench.summary, "Summary JSON");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Summarise a results CSV");
  report->add_option("--results", rep.results, "Results CSV")->required();
  report->add_option("--summary", rep.summary, "Write the summary JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(gen);
    if (localize_cmd->parsed()) return run_localize(loc);
    if (demn_check->parsed()) return run_demn_check(chk);
    if (benchmark->parsed()) return run_benchmark(bench);
    if (report->parsed()) return run_report(rep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
