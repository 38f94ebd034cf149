#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "sbmc/bisection.h"
#include "sbmc/build_info.h"
#include "sbmc/classes.h"
#include "sbmc/cli.h"
#include "sbmc/cycles.h"
#include "sbmc/error.h"
#include "sbmc/inference.h"
#include "sbmc/transport.h"

namespace sbmc::cli {
namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::string, double, std::uint64_t, bool>;

// A run's result: named columns and rows. Record results (one row) are
// written as a flat JSON object instead of a row list.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool record = false;
};

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return fmt::format("{}", v);
        }
      },
      cell);
}

Json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return Json(v); }, cell);
}

Json config_json(const RunConfig& config) {
  Json j;
  j["command"] = config.command;
  j["n"] = config.n;
  j["c"] = config.c;
  j["delta"] = config.delta;
  j["flavor"] = std::string(to_string(config.flavor));
  j["deltas"] = config.deltas;
  j["ns"] = config.ns;
  j["ks"] = config.ks;
  j["k"] = config.k;
  j["witness"] = config.witness;
  j["trials"] = config.trials;
  j["samples"] = config.samples;
  j["remove_cycles"] = config.remove_cycles;
  j["seed"] = config.seed;
  j["input"] = config.input;
  j["format"] = config.resolved_format();
  j["allow_seven"] = config.allow_seven;
  return j;
}

void write_config_comment(std::ostream& out, const RunConfig& config) {
  out << "# sbmc-config\n";
  for (const auto& [key, value] : config_entries(config)) {
    out << "# " << key << " = " << value << '\n';
  }
}

void write_table(std::ostream& out, const RunConfig& config,
                 const Table& table) {
  if (config.resolved_format() == "json") {
    Json doc;
    doc["config"] = config_json(config);
    if (table.record) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        doc[table.columns[c]] = cell_json(table.rows.at(0)[c]);
      }
    } else {
      Json rows = Json::array();
      for (const auto& row : table.rows) {
        Json r;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          r[table.columns[c]] = cell_json(row[c]);
        }
        rows.push_back(std::move(r));
      }
      doc["rows"] = std::move(rows);
    }
    out << doc.dump(2) << '\n';
    return;
  }
  write_config_comment(out, config);
  out << fmt::format("{}\n", fmt::join(table.columns, ","));
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (const Cell& cell : row) cells.push_back(cell_text(cell));
    out << fmt::format("{}\n", fmt::join(cells, ","));
  }
}

Graph input_graph(const RunConfig& config) {
  if (!config.input.empty()) return read_edge_list_file(config.input);
  return sample_graph(config.model(), config.seed);
}

BisectionReport bisect_graph(const Graph& g, std::uint64_t seed) {
  const auto mode = g.n() <= kExactBisectionCap ? BisectionMode::kExact
                                                : BisectionMode::kHeuristic;
  return min_bisection(g, mode, seed);
}

Table run_stats(const RunConfig& config) {
  const Graph g = input_graph(config);
  const BisectionReport bisection = bisect_graph(g, config.seed);
  Table t{{"k", "x_k", "y_k", "y_exact", "z_k", "bisection",
           "bisection_exact"}, {}};
  for (int k : config.k_grid()) {
    const CycleReport r = cycle_report(g, k);
    t.rows.push_back({std::uint64_t(k), r.x_k, r.y_k, r.y_k_exact, r.z_k,
                      std::uint64_t(bisection.value), bisection.exact});
  }
  return t;
}

Table run_bisect(const RunConfig& config) {
  const Graph g = input_graph(config);
  const BisectionReport r = bisect_graph(g, config.seed);
  std::string sides;
  for (auto side : r.partition) sides.push_back(side ? '1' : '0');
  return {{"n", "edges", "value", "exact", "partition"},
          {{std::uint64_t(g.n()), std::uint64_t(g.edge_count()),
            std::uint64_t(r.value), r.exact, sides}},
          false};
}

Table run_ot_exact(const RunConfig& config, Workers) {
  const ModelSpec p = config.model();
  const OtReport r = ot_exact(p, p.uniform_counterpart(), config.allow_seven);
  return {{"primal_cost", "dual_objective", "gap", "classes"},
          {{r.primal_cost, r.dual_objective, r.gap,
            std::uint64_t(r.classes)}},
          true};
}

Table run_lb_sweep(const RunConfig& config, Workers workers) {
  Table t{{"delta", "k", "estimate", "se", "lb_formula"}, {}};
  for (double delta : config.delta_grid()) {
    ModelSpec p = config.model();
    p.delta = delta;
    for (int k : config.k_grid()) {
      const GapEstimate gap = lb_cycle_gap(p, p.uniform_counterpart(), k,
                                           config.samples, config.seed,
                                           workers);
      t.rows.push_back({delta, std::uint64_t(k), gap.estimate, gap.se,
                        lb_formula(k, delta)});
    }
  }
  return t;
}

Table run_detect(const RunConfig& config, Workers workers) {
  DetectOptions options;
  options.trials = config.trials;
  options.pilot_samples = config.samples;
  if (config.remove_cycles > 0) {
    const int k_max = config.remove_cycles;
    options.perturb = [k_max](const Graph& g, std::uint64_t seed) {
      return remove_short_cycles(g, k_max, seed);
    };
  }
  const EstimatorResult r = detect(config.model(),
                                   parse_witness(config.witness), config.seed,
                                   options, workers);
  return {{"witness", "accuracy", "se", "n_trials", "threshold_used",
           "mean_p", "mean_q", "mean_source", "mean_edits", "max_edits"},
          {{r.witness_name, r.accuracy, r.se, std::uint64_t(r.n_trials),
            r.threshold_used, r.means.p, r.means.q,
            std::string(r.mean_source == MeanSource::kClosedForm
                            ? "closed-form"
                            : "pilot"),
            r.mean_edits, std::uint64_t(r.max_edits)}},
          true};
}

Table run_detect_sweep(const RunConfig& config, Workers workers) {
  const auto rows = detection_sweep(
      config.c, config.delta_grid(), config.n_grid(), config.flavor,
      parse_witness(config.witness), config.trials, config.seed, workers);
  Table t{{"delta", "n", "accuracy", "se"}, {}};
  for (const SweepRow& row : rows) {
    t.rows.push_back({row.delta, std::uint64_t(row.n), row.result.accuracy,
                      row.result.se});
  }
  return t;
}

Table run_variance_check(const RunConfig& config, Workers workers) {
  const VarianceReport r =
      efron_stein_check(parse_witness(config.witness), config.model(),
                        config.n_grid(), config.samples, config.seed, workers);
  Table t{{"n", "mean", "variance", "bound", "flagged", "slope"}, {}};
  for (std::size_t i = 0; i < r.n_grid.size(); ++i) {
    t.rows.push_back({std::uint64_t(r.n_grid[i]), r.mean[i],
                      r.empirical_variance[i], r.bound[i],
                      bool(r.flagged[i]), r.slope});
  }
  return t;
}

Table run_enumerate(const RunConfig& config) {
  const Vertex cap = config.allow_seven ? 7 : kExactDistributionCap;
  const ClassCatalog catalog = ClassCatalog::build(config.n, cap);
  const GraphDistribution d =
      exact_distribution(config.model(), catalog, config.allow_seven);
  Table t{{"class_index", "class_size", "probability"}, {}};
  for (std::size_t i = 0; i < d.probability.size(); ++i) {
    t.rows.push_back({std::uint64_t(i), d.class_size[i], d.probability[i]});
  }
  return t;
}

}  // namespace

std::string version_string() {
  return fmt::format("sbmc {} (revision {}, {} build, {})",
                     build_info::kVersion, build_info::kGitRevision,
                     build_info::kBuildType, build_info::kCompiler);
}

void run(const RunConfig& config, std::ostream& out) {
  config.validate();
  const Workers workers{config.workers};
  const std::string& cmd = config.command;
  if (cmd == "sample") {
    write_config_comment(out, config);
    write_edge_list(out, sample_graph(config.model(), config.seed));
    return;
  }
  Table table;
  if (cmd == "stats") {
    table = run_stats(config);
  } else if (cmd == "bisect") {
    table = run_bisect(config);
  } else if (cmd == "ot-exact") {
    table = run_ot_exact(config, workers);
  } else if (cmd == "lb-sweep") {
    table = run_lb_sweep(config, workers);
  } else if (cmd == "detect") {
    table = run_detect(config, workers);
  } else if (cmd == "detect-sweep") {
    table = run_detect_sweep(config, workers);
  } else if (cmd == "variance-check") {
    table = run_variance_check(config, workers);
  } else {
    table = run_enumerate(config);
  }
  write_table(out, config, table);
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{
      "Sparse block-model vs random-graph transport and detection "
      "experiments"};
  app.set_version_flag("--version", version_string());
  app.option_defaults()->always_capture_default(false);

  std::string command;
  app.add_option("command", command,
                 fmt::format("One of: {}", fmt::join(kCommands, ", ")));
  std::string config_path;
  app.add_option("--config", config_path,
                 "key = value file, or any CSV/JSON artifact to rerun");

  // Every remaining flag is a config key; values go through the same parser
  // as config files so both routes accept identical syntax.
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
    bool list = false;
  };
  const Flag flags[] = {
      {"--n", "n", "vertex count"},
      {"--c", "c", "average degree"},
      {"--delta", "delta", "community signal, 0 <= delta <= c"},
      {"--flavor", "flavor", "uniform, assortative or disassortative"},
      {"--deltas", "deltas", "delta grid (comma separated)", true},
      {"--ns", "ns", "vertex-count grid (comma separated)", true},
      {"--ks", "ks", "cycle-length grid (comma separated)", true},
      {"--k", "k", "cycle length"},
      {"--witness", "witness", "edges, cycles:K, packing:K or bisection"},
      {"--trials", "trials", "detection trials"},
      {"--samples", "samples", "Monte Carlo samples per model or n"},
      {"--remove-cycles", "remove_cycles",
       "detect: delete cycles up to this length from each trial graph"},
      {"--seed", "seed", "64-bit seed (default from SBMC_SEED, else 1)"},
      {"--input,-i", "input", "edge-list file for stats and bisect"},
      {"--format", "format", "csv or json"},
      {"--output,-o", "output", "output file (default stdout)"},
      {"--workers", "workers", "worker threads (0 = all cores)"},
  };
  std::vector<std::vector<std::string>> values(std::size(flags));
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < std::size(flags); ++i) {
    auto* opt = app.add_option(flags[i].name, values[i], flags[i].help);
    if (flags[i].list) {
      opt->delimiter(',');
    } else {
      opt->expected(1);
    }
    options.push_back(opt);
  }
  bool allow_seven = false;
  auto* seven = app.add_flag("--allow-seven", allow_seven,
                             "permit exact computations at n = 7");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig config;
  try {
    if (const char* env = std::getenv(kSeedEnvVar); env && *env) {
      apply_setting(config, "seed", env);
    }
    if (!config_path.empty()) load_config_file(config, config_path);
    if (!command.empty()) config.command = command;
    for (std::size_t i = 0; i < std::size(flags); ++i) {
      if (options[i]->count() == 0) continue;
      apply_setting(config, flags[i].key,
                    fmt::format("{}", fmt::join(values[i], ", ")));
    }
    if (seven->count() > 0) config.allow_seven = allow_seven;
    config.validate();
  } catch (const Error& e) {
    err << "sbmc: error: " << e.what() << '\n'
        << "Run with --help for usage.\n";
    return 2;
  }

  try {
    // Render fully before touching the output file.
    std::ostringstream artifact;
    run(config, artifact);
    if (config.output.empty()) {
      out << artifact.str();
    } else {
      std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
      if (!file || !(file << artifact.str()) || !file.flush()) {
        err << "sbmc: error: cannot write '" << config.output << "'\n";
        return 1;
      }
    }
  } catch (const Error& e) {
    err << "sbmc: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "sbmc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sbmc::cli
