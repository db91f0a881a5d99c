#include "wsnloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "wsnloc/errors.hpp"
#include "wsnloc/random.hpp"

namespace wsnloc {

namespace {

constexpr std::string_view kCsvHeader = "shape,method,n_anchors,radius,repeat,ales_percent,seconds";

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buffer, end);
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ParseError(where + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::size_t parse_count(std::string_view text, const std::string& where) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ParseError(where + ": '" + std::string(text) + "' is not a non-negative integer");
  }
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

using CellKey = std::tuple<ShapeKind, std::size_t, double>;

}  // namespace

void ExperimentConfig::validate() const {
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (anchor_counts.empty() || radii.empty() || methods.empty()) {
    throw ConfigError("anchor_counts, radii and methods must be non-empty");
  }
  for (double r : radii) {
    if (!(r > 0.0)) throw ConfigError("every radius must be > 0");
  }
  for (std::size_t a : anchor_counts) {
    if (a == 0 || a >= n_nodes) throw ConfigError("anchor counts must lie in [1, n)");
  }
  if (!shape.has_area(area)) throw ConfigError("shape mask has no area");
  ga.validate();
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");

  ExperimentConfig config;
  try {
    if (doc.contains("shape")) config.shape = TopologyShape::of(parse_shape_kind(doc["shape"].get<std::string>()));
    if (doc.contains("shape_params")) {
      const auto& p = doc["shape_params"];
      config.shape.notch_width_fraction = p.value("notch_width_fraction", config.shape.notch_width_fraction);
      config.shape.notch_height_fraction = p.value("notch_height_fraction", config.shape.notch_height_fraction);
      config.shape.outer_radius_fraction = p.value("outer_radius_fraction", config.shape.outer_radius_fraction);
      config.shape.inner_radius_fraction = p.value("inner_radius_fraction", config.shape.inner_radius_fraction);
      config.shape.band_half_width_fraction =
          p.value("band_half_width_fraction", config.shape.band_half_width_fraction);
    }
    config.n_nodes = doc.value("n", config.n_nodes);
    if (doc.contains("area")) {
      const auto& a = doc["area"];
      if (!a.is_array() || a.size() != 2) throw ParseError("config: 'area' must be [width, height]");
      config.area = {a[0].get<double>(), a[1].get<double>()};
    }
    if (doc.contains("anchor_counts")) config.anchor_counts = doc["anchor_counts"].get<std::vector<std::size_t>>();
    if (doc.contains("radii")) config.radii = doc["radii"].get<std::vector<double>>();
    config.repeats = doc.value("repeats", config.repeats);
    if (doc.contains("methods")) {
      config.methods.clear();
      for (const auto& m : doc["methods"]) config.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (doc.contains("ga")) {
      const auto& g = doc["ga"];
      config.ga.population_size = g.value("population_size", config.ga.population_size);
      config.ga.max_iter = g.value("max_iter", config.ga.max_iter);
      config.ga.pc = g.value("pc", config.ga.pc);
      config.ga.pm = g.value("pm", config.ga.pm);
      config.ga.eta_c = g.value("eta_c", config.ga.eta_c);
      config.ga.eta_m = g.value("eta_m", config.ga.eta_m);
      config.ga.seed = g.value("seed", config.ga.seed);
      config.ga.warm_start = g.value("warm_start", config.ga.warm_start);
    }
    config.seed_base = doc.value("seed_base", config.seed_base);
    config.workers = doc.value("workers", config.workers);
    config.record_timing = doc.value("record_timing", config.record_timing);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_file(path));
}

std::string format_experiment_config(const ExperimentConfig& config) {
  nlohmann::ordered_json doc;
  doc["shape"] = std::string(to_string(config.shape.kind));
  doc["shape_params"] = {{"notch_width_fraction", config.shape.notch_width_fraction},
                         {"notch_height_fraction", config.shape.notch_height_fraction},
                         {"outer_radius_fraction", config.shape.outer_radius_fraction},
                         {"inner_radius_fraction", config.shape.inner_radius_fraction},
                         {"band_half_width_fraction", config.shape.band_half_width_fraction}};
  doc["n"] = config.n_nodes;
  doc["area"] = {config.area.width, config.area.height};
  doc["anchor_counts"] = config.anchor_counts;
  doc["radii"] = config.radii;
  doc["repeats"] = config.repeats;
  auto methods = nlohmann::ordered_json::array();
  for (Method m : config.methods) methods.push_back(std::string(to_string(m)));
  doc["methods"] = methods;
  doc["ga"] = {{"population_size", config.ga.population_size},
               {"max_iter", config.ga.max_iter},
               {"pc", config.ga.pc},
               {"pm", config.ga.pm},
               {"eta_c", config.ga.eta_c},
               {"eta_m", config.ga.eta_m},
               {"seed", config.ga.seed},
               {"warm_start", config.ga.warm_start}};
  doc["seed_base"] = config.seed_base;
  doc["workers"] = config.workers;
  doc["record_timing"] = config.record_timing;
  return doc.dump(2) + "\n";
}

std::size_t resolve_workers(const ExperimentConfig& config) {
  std::size_t workers = config.workers;
  if (const char* env = std::getenv("WSNLOC_WORKERS"); env != nullptr && *env != '\0') {
    workers = parse_count(env, "WSNLOC_WORKERS");
  }
  return std::max<std::size_t>(workers, 1);
}

std::uint64_t cell_seed(std::uint64_t seed_base, ShapeKind shape, std::size_t n_anchors, double radius,
                        std::size_t repeat) {
  return combine_seeds({seed_base, static_cast<std::uint64_t>(shape), n_anchors, std::bit_cast<std::uint64_t>(radius),
                        repeat});
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Task {
    std::size_t n_anchors;
    double radius;
    std::size_t repeat;
  };
  std::vector<Task> tasks;
  for (std::size_t a : config.anchor_counts) {
    for (double r : config.radii) {
      for (std::size_t rep = 0; rep < config.repeats; ++rep) tasks.push_back({a, r, rep});
    }
  }

  const std::size_t n_methods = config.methods.size();
  std::vector<ResultRow> rows(tasks.size() * n_methods);
  std::atomic<std::size_t> next{0};

  const auto work = [&]() {
    for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      const Task& task = tasks[t];
      const std::uint64_t seed = cell_seed(config.seed_base, config.shape.kind, task.n_anchors, task.radius, task.repeat);
      std::optional<Network> network;
      std::optional<HopMatrix> hops;
      std::string setup_error;
      try {
        network = generate_network(config.shape, config.n_nodes, task.n_anchors, task.radius, config.area, seed);
        hops = hop_matrix(*network);
      } catch (const std::exception& e) {
        setup_error = e.what();
      }
      for (std::size_t m = 0; m < n_methods; ++m) {
        ResultRow& row = rows[t * n_methods + m];
        row.shape = config.shape.kind;
        row.method = config.methods[m];
        row.n_anchors = task.n_anchors;
        row.radius = task.radius;
        row.repeat = task.repeat;
        if (!network) {
          row.error = setup_error;
          continue;
        }
        GaConfig ga = config.ga;
        ga.seed = combine_seeds({seed, config.ga.seed});
        const auto start = std::chrono::steady_clock::now();
        try {
          const LocalizationResult result = localize(*network, *hops, row.method, ga);
          row.ales_percent = ales(result.placement, network->unknowns(), network->radius());
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        if (config.record_timing) {
          row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
      }
    }
  };

  const std::size_t workers = std::min(resolve_workers(config), std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ExperimentReport report;
  report.rows = std::move(rows);
  report.cells = summarize(report.rows);
  report.overview = overview(report.cells);
  return report;
}

std::vector<CellSummary> summarize(std::span<const ResultRow> rows, double alpha) {
  std::map<std::tuple<ShapeKind, Method, std::size_t, double>, std::vector<const ResultRow*>> groups;
  for (const ResultRow& row : rows) groups[{row.shape, row.method, row.n_anchors, row.radius}].push_back(&row);

  std::vector<CellSummary> cells;
  std::map<CellKey, std::vector<std::size_t>> by_cell;
  for (const auto& [key, members] : groups) {
    CellSummary cell;
    std::tie(cell.shape, cell.method, cell.n_anchors, cell.radius) = key;
    std::vector<double> samples;
    for (const ResultRow* row : members) {
      cell.seconds += row->seconds;
      if (row->ales_percent) {
        samples.push_back(*row->ales_percent);
      } else {
        ++cell.errors;
      }
    }
    cell.samples = samples.size();
    if (!samples.empty()) {
      double sum = 0.0;
      for (double s : samples) sum += s;
      cell.mean_ales = sum / static_cast<double>(samples.size());
      cell.ala = 100.0 - *cell.mean_ales;
    }
    if (samples.size() >= 2) cell.ci = confidence_interval(samples, alpha);
    by_cell[{cell.shape, cell.n_anchors, cell.radius}].push_back(cells.size());
    cells.push_back(std::move(cell));
  }

  for (const auto& [key, members] : by_cell) {
    for (std::size_t a : members) {
      if (!cells[a].mean_ales) continue;
      for (std::size_t b : members) {
        if (a == b || !cells[b].mean_ales) continue;
        cells[a].apg_vs.emplace_back(cells[b].method, *cells[b].mean_ales - *cells[a].mean_ales);
      }
    }
  }
  return cells;
}

std::vector<MethodOverview> overview(std::span<const CellSummary> cells) {
  std::map<Method, std::map<CellKey, double>> means;
  for (const CellSummary& c : cells) {
    if (c.mean_ales) means[c.method][{c.shape, c.n_anchors, c.radius}] = *c.mean_ales;
  }
  std::vector<MethodOverview> out;
  for (const auto& [method, own] : means) {
    MethodOverview o;
    o.method = method;
    o.cells = own.size();
    for (const auto& [key, value] : own) o.mean_ales += value;
    o.mean_ales /= static_cast<double>(own.size());
    o.ala = 100.0 - o.mean_ales;
    for (const auto& [other, theirs] : means) {
      if (other == method) continue;
      std::vector<double> others;
      double ours = 0.0;
      for (const auto& [key, value] : own) {
        if (auto it = theirs.find(key); it != theirs.end()) {
          others.push_back(it->second);
          ours += value;
        }
      }
      if (others.empty()) continue;
      o.apg_vs.emplace_back(other, apg(others, ours / static_cast<double>(others.size())));
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::string format_results_csv(std::span<const ResultRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRow& row : rows) {
    out += to_string(row.shape);
    out += ',';
    out += to_string(row.method);
    out += ',' + std::to_string(row.n_anchors);
    out += ',' + format_double(row.radius);
    out += ',' + std::to_string(row.repeat);
    out += ',' + (row.ales_percent ? format_double(*row.ales_percent) : std::string("error"));
    out += ',' + format_double(row.seconds);
    out += '\n';
  }
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("results CSV: unexpected header '" + std::string(line) + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const std::string where = "results CSV line " + std::to_string(line_no);
    if (fields.size() != 7) throw ParseError(where + ": expected 7 fields, got " + std::to_string(fields.size()));
    ResultRow row;
    try {
      row.shape = parse_shape_kind(fields[0]);
      row.method = parse_method(fields[1]);
    } catch (const InvalidArgument& e) {
      throw ParseError(where + ": " + e.what());
    }
    row.n_anchors = parse_count(fields[2], where);
    row.radius = parse_double(fields[3], where);
    row.repeat = parse_count(fields[4], where);
    if (fields[5] != "error") row.ales_percent = parse_double(fields[5], where);
    row.seconds = parse_double(fields[6], where);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("results CSV: missing header");
  return rows;
}

void write_results_csv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  write_file(path, format_results_csv(rows));
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  return parse_results_csv(read_file(path));
}

std::string format_summary(std::span<const CellSummary> cells, std::span<const MethodOverview> methods) {
  nlohmann::ordered_json doc;
  auto cell_array = nlohmann::ordered_json::array();
  for (const CellSummary& c : cells) {
    nlohmann::ordered_json j;
    j["shape"] = std::string(to_string(c.shape));
    j["method"] = std::string(to_string(c.method));
    j["n_anchors"] = c.n_anchors;
    j["radius"] = c.radius;
    j["samples"] = c.samples;
    j["errors"] = c.errors;
    j["mean"] = c.mean_ales ? nlohmann::ordered_json(*c.mean_ales) : nlohmann::ordered_json(nullptr);
    j["ala"] = c.ala ? nlohmann::ordered_json(*c.ala) : nlohmann::ordered_json(nullptr);
    if (c.ci) {
      j["ci_lower"] = c.ci->lower;
      j["ci_upper"] = c.ci->upper;
    } else {
      j["ci_lower"] = nullptr;
      j["ci_upper"] = nullptr;
      j["ci_note"] = "skipped: fewer than two samples";
    }
    nlohmann::ordered_json apg_vs = nlohmann::ordered_json::object();
    for (const auto& [other, gain] : c.apg_vs) apg_vs[std::string(to_string(other))] = gain;
    j["apg_vs"] = apg_vs;
    j["seconds"] = c.seconds;
    cell_array.push_back(std::move(j));
  }
  doc["cells"] = std::move(cell_array);
  auto method_array = nlohmann::ordered_json::array();
  for (const MethodOverview& o : methods) {
    nlohmann::ordered_json j;
    j["method"] = std::string(to_string(o.method));
    j["cells"] = o.cells;
    j["mean"] = o.mean_ales;
    j["ala"] = o.ala;
    nlohmann::ordered_json apg_vs = nlohmann::ordered_json::object();
    for (const auto& [other, gain] : o.apg_vs) apg_vs[std::string(to_string(other))] = gain;
    j["apg_vs"] = apg_vs;
    method_array.push_back(std::move(j));
  }
  doc["overview"] = std::move(method_array);
  return doc.dump(2) + "\n";
}

std::string format_summary_table(std::span<const CellSummary> cells) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-7s %-9s %5s %7s %4s %9s %8s %9s %9s\n", "shape", "method", "N_a", "R", "n",
                "mean%", "ALA%", "ci_lo", "ci_hi");
  out += line;
  for (const CellSummary& c : cells) {
    const auto opt = [](const std::optional<double>& v) {
      char buf[32];
      if (v) {
        std::snprintf(buf, sizeof(buf), "%.2f", *v);
      } else {
        std::snprintf(buf, sizeof(buf), "n/a");
      }
      return std::string(buf);
    };
    std::snprintf(line, sizeof(line), "%-7s %-9s %5zu %7g %4zu %9s %8s %9s %9s\n",
                  std::string(to_string(c.shape)).c_str(), std::string(to_string(c.method)).c_str(), c.n_anchors,
                  c.radius, c.samples, opt(c.mean_ales).c_str(), opt(c.ala).c_str(),
                  opt(c.ci ? std::optional(c.ci->lower) : std::nullopt).c_str(),
                  opt(c.ci ? std::optional(c.ci->upper) : std::nullopt).c_str());
    out += line;
  }
  return out;
}

}  // namespace wsnloc
