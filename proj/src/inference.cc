#include "sbmc/inference.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "sbmc/bisection.h"
#include "sbmc/cycles.h"
#include "sbmc/error.h"
#include "sbmc/rng.h"
#include "sbmc/summary.h"

namespace sbmc {
namespace {

// Pilot samples draw from a stream range disjoint from the trials.
constexpr std::uint64_t kPilotStreamBase = std::uint64_t{1} << 48;

int parse_length(std::string_view text, std::string_view whole) {
  int k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParse,
                fmt::format("witness '{}': cycle length must be an integer",
                            whole));
  }
  return k;
}

MeanPair pilot_means(const ModelSpec& p, const ModelSpec& q,
                     const Witness& witness, std::uint64_t seed,
                     std::size_t pilot_samples, Workers workers) {
  const std::size_t count = std::max<std::size_t>(pilot_samples, 1);
  std::vector<double> vp(count);
  std::vector<double> vq(count);
  parallel_for(2 * count, workers, [&](std::size_t t) {
    Rng rng(seed, kPilotStreamBase + t);
    const ModelSpec& spec = t % 2 == 0 ? p : q;
    (t % 2 == 0 ? vp : vq)[t / 2] = witness.evaluate(sample_graph(spec, rng()));
  });
  return {summarize(vp).mean, summarize(vq).mean};
}

}  // namespace

Witness edges_witness() {
  return {WitnessKind::kEdges, 0, "edges",
          [](const Graph& g) { return static_cast<double>(g.edge_count()); },
          true};
}

Witness cycles_witness(int k) {
  return {WitnessKind::kCycles, k, fmt::format("cycles:{}", k),
          [k](const Graph& g) {
            return static_cast<double>(count_k_cycles(g, k));
          },
          false};
}

Witness packing_witness(int k) {
  return {WitnessKind::kPacking, k, fmt::format("packing:{}", k),
          [k](const Graph& g) {
            return static_cast<double>(max_disjoint_packing(g, k).size);
          },
          true};
}

// Exact for n <= kExactBisectionCap, otherwise a fixed-seed heuristic.
Witness bisection_witness() {
  return {WitnessKind::kBisection, 0, "bisection",
          [](const Graph& g) {
            const auto mode = g.n() <= kExactBisectionCap
                                  ? BisectionMode::kExact
                                  : BisectionMode::kHeuristic;
            return static_cast<double>(min_bisection(g, mode, 0).value);
          },
          true};
}

Witness parse_witness(std::string_view text) {
  if (text == "edges") return edges_witness();
  if (text == "bisection") return bisection_witness();
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto head = text.substr(0, colon);
    const int k = parse_length(text.substr(colon + 1), text);
    if (k < 3 || k > kMaxCycleLength) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("witness '{}': k must be in [3, {}]", text,
                              kMaxCycleLength));
    }
    if (head == "cycles") return cycles_witness(k);
    if (head == "packing") return packing_witness(k);
  }
  throw Error(ErrorKind::kParse,
              fmt::format("unknown witness '{}' (expected edges, bisection, "
                          "cycles:K or packing:K)",
                          text));
}

Label threshold_label(double value, double mean_p, double mean_q) {
  if (mean_p == mean_q) {
    throw Error(ErrorKind::kDegenerateMeans,
                fmt::format("threshold estimator: means coincide ({}); the "
                            "witness cannot separate the models",
                            mean_p));
  }
  const double midpoint = 0.5 * (mean_p + mean_q);
  const bool upper = value >= midpoint;
  if (mean_p > mean_q) return upper ? Label::kP : Label::kQ;
  return upper ? Label::kQ : Label::kP;
}

Label threshold_estimator(const Witness& witness, double mean_p, double mean_q,
                          const Graph& g) {
  const double value = mean_p == mean_q ? mean_p : witness.evaluate(g);
  return threshold_label(value, mean_p, mean_q);
}

std::optional<MeanPair> closed_form_means(const Witness& witness,
                                          const ModelSpec& p,
                                          const ModelSpec& q) {
  switch (witness.kind) {
    case WitnessKind::kEdges:
      return MeanPair{expected_edge_count(p), expected_edge_count(q)};
    case WitnessKind::kCycles:
    case WitnessKind::kPacking:
      // Y_k tracks X_k up to overlapping cycles, which are rare when sparse.
      return MeanPair{expected_cycles(p, witness.k),
                      expected_cycles(q, witness.k)};
    case WitnessKind::kBisection:
    case WitnessKind::kCustom:
      break;
  }
  return std::nullopt;
}

EstimatorResult detect(const ModelSpec& p, const Witness& witness,
                       std::uint64_t seed, const DetectOptions& options,
                       Workers workers) {
  p.validate();
  if (options.trials == 0) {
    throw Error(ErrorKind::kInvalidArgument, "detect: trials must be > 0");
  }
  const ModelSpec q = p.uniform_counterpart();
  EstimatorResult result;
  result.witness_name = witness.name;
  result.n_trials = options.trials;

  const auto closed = closed_form_means(witness, p, q);
  if (closed && closed->p != closed->q) {
    result.means = *closed;
    result.mean_source = MeanSource::kClosedForm;
  } else {
    result.means =
        pilot_means(p, q, witness, seed, options.pilot_samples, workers);
    result.mean_source = MeanSource::kPilot;
  }
  result.threshold_used = 0.5 * (result.means.p + result.means.q);

  std::vector<char> correct(options.trials);
  std::vector<std::size_t> edits(options.trials, 0);
  parallel_for(options.trials, workers, [&](std::size_t t) {
    Rng rng(seed, t);
    const bool planted = (rng() >> 63) != 0;
    Graph g = sample_graph(planted ? p : q, rng());
    const std::uint64_t perturb_seed = rng();
    if (options.perturb) {
      EditedGraph edited = options.perturb(g, perturb_seed);
      g = std::move(edited.graph);
      edits[t] = edited.edits;
    }
    const Label label =
        threshold_label(witness.evaluate(g), result.means.p, result.means.q);
    correct[t] = (label == Label::kP) == planted;
  });

  const double hits =
      static_cast<double>(std::count(correct.begin(), correct.end(), 1));
  const double trials = static_cast<double>(options.trials);
  result.accuracy = hits / trials;
  result.se = std::sqrt(result.accuracy * (1.0 - result.accuracy) / trials);
  double edit_total = 0.0;
  for (std::size_t e : edits) {
    edit_total += static_cast<double>(e);
    result.max_edits = std::max(result.max_edits, e);
  }
  result.mean_edits = edit_total / trials;
  return result;
}

std::vector<SweepRow> detection_sweep(double c,
                                      const std::vector<double>& delta_grid,
                                      const std::vector<Vertex>& n_grid,
                                      Flavor flavor, const Witness& witness,
                                      std::size_t trials, std::uint64_t seed,
                                      Workers workers) {
  if (delta_grid.empty() || n_grid.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "detection_sweep: delta and n grids must be nonempty");
  }
  std::vector<SweepRow> rows;
  DetectOptions options;
  options.trials = trials;
  std::uint64_t row_index = 0;
  for (double delta : delta_grid) {
    for (Vertex n : n_grid) {
      const ModelSpec p{n, c, delta, flavor};
      rows.push_back({delta, n,
                      detect(p, witness, stream_seed(seed, row_index++),
                             options, workers)});
    }
  }
  return rows;
}

VarianceReport efron_stein_check(const Witness& witness, const ModelSpec& spec,
                                 const std::vector<Vertex>& n_grid,
                                 std::size_t samples, std::uint64_t seed,
                                 Workers workers) {
  if (samples < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "efron_stein_check: need at least 2 samples per n");
  }
  VarianceReport report;
  report.n_grid = n_grid;
  report.samples = samples;
  const double slack = 1.0 + 5.0 / std::sqrt(static_cast<double>(samples));
  for (std::size_t index = 0; index < n_grid.size(); ++index) {
    ModelSpec at = spec;
    at.n = n_grid[index];
    const double sup = at.kernel().sup();
    const std::uint64_t grid_seed = stream_seed(seed, index);
    std::vector<double> values(samples);
    parallel_for(samples, workers, [&](std::size_t s) {
      values[s] = witness.evaluate(sample_graph(at, stream_seed(grid_seed, s)));
    });
    const SampleSummary summary = summarize(values);
    const double bound = sup * static_cast<double>(at.n);
    report.mean.push_back(summary.mean);
    report.empirical_variance.push_back(summary.variance);
    report.bound.push_back(bound);
    report.flagged.push_back(summary.variance > bound * slack);
  }
  const std::size_t count = n_grid.size();
  if (count == 1) {
    report.slope = report.empirical_variance[0] / n_grid[0];
  } else if (count > 1) {
    double mean_n = 0.0;
    double mean_v = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      mean_n += n_grid[i];
      mean_v += report.empirical_variance[i];
    }
    mean_n /= count;
    mean_v /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      sxy += (n_grid[i] - mean_n) * (report.empirical_variance[i] - mean_v);
      sxx += (n_grid[i] - mean_n) * (n_grid[i] - mean_n);
    }
    report.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return report;
}

EditedGraph remove_short_cycles(const Graph& g, int k_max,
                                std::uint64_t seed) {
  if (k_max > kMaxCycleLength) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("remove_short_cycles: k_max = {} exceeds the "
                            "enumeration cap of {}",
                            k_max, kMaxCycleLength));
  }
  EditedGraph out{g, 0};
  Rng rng(seed);
  // Lengths in ascending order: when length L is processed every shorter
  // cycle is already broken, so each intact cycle met is a shortest one.
  for (int length = 3; length <= k_max; ++length) {
    const CycleList cycles = enumerate_k_cycles(out.graph, length);
    if (cycles.size() == 0) continue;
    std::unordered_set<std::uint64_t> deleted;
    auto key = [](Vertex a, Vertex b) {
      if (a > b) std::swap(a, b);
      return (std::uint64_t{a} << 32) | b;
    };
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const auto cycle = cycles[i];
      bool intact = true;
      for (int t = 0; t < length && intact; ++t) {
        intact = !deleted.contains(key(cycle[t], cycle[(t + 1) % length]));
      }
      if (!intact) continue;
      const auto t = static_cast<int>(rng.below(length));
      deleted.insert(key(cycle[t], cycle[(t + 1) % length]));
    }
    std::vector<Edge> kept;
    for (const auto& [i, j] : out.graph.edges()) {
      if (!deleted.contains(key(i, j))) kept.emplace_back(i, j);
    }
    out.edits += deleted.size();
    out.graph = Graph(g.n(), std::move(kept));
  }
  return out;
}

}  // namespace sbmc
