#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbmc/graph.h"
#include "sbmc/models.h"
#include "sbmc/parallel.h"

namespace sbmc {

enum class Label { kP, kQ };

enum class WitnessKind { kEdges, kCycles, kPacking, kBisection, kCustom };

// A graph statistic used as a test function.
struct Witness {
  WitnessKind kind = WitnessKind::kCustom;
  int k = 0;
  std::string name;
  std::function<double(const Graph&)> evaluate;
  bool lipschitz = false;  // 1-Lipschitz in edit distance
};

// "edges", "cycles:K", "packing:K", "bisection".
Witness parse_witness(std::string_view text);
Witness edges_witness();
Witness cycles_witness(int k);
Witness packing_witness(int k);
Witness bisection_witness();

// Midpoint rule: the label of whichever model's mean is on the same side of
// (mean_p + mean_q) / 2 as value. A value exactly at the midpoint goes to the
// larger-mean model. Throws kDegenerateMeans when the means coincide.
Label threshold_label(double value, double mean_p, double mean_q);
Label threshold_estimator(const Witness& witness, double mean_p, double mean_q,
                          const Graph& g);

// Closed-form means of a witness under P and Q, when known.
struct MeanPair {
  double p = 0.0;
  double q = 0.0;
};
std::optional<MeanPair> closed_form_means(const Witness& witness,
                                          const ModelSpec& p,
                                          const ModelSpec& q);

enum class MeanSource { kClosedForm, kPilot };

struct EstimatorResult {
  double accuracy = 0.0;
  double se = 0.0;
  std::size_t n_trials = 0;
  double threshold_used = 0.0;
  std::string witness_name;
  MeanPair means;
  MeanSource mean_source = MeanSource::kClosedForm;
  double mean_edits = 0.0;  // per trial, when a perturbation is set
  std::size_t max_edits = 0;
};

struct EditedGraph {
  Graph graph;
  std::size_t edits = 0;
};

struct DetectOptions {
  std::size_t trials = 200;
  std::size_t pilot_samples = 200;
  // Applied to every trial graph before the witness is evaluated; models an
  // adversary editing the observed graph. The threshold is still fitted to
  // the unedited models.
  std::function<EditedGraph(const Graph&, std::uint64_t)> perturb;
};

// Estimator accuracy at distinguishing P from Q. Each trial draws
// sigma ~ Ber(1/2), samples P (sigma = 1) or Q, and labels by thresholding.
// Means come from closed forms; if those are unavailable or coincide, from
// a pilot run on held-out seeds.
EstimatorResult detect(const ModelSpec& p, const Witness& witness,
                       std::uint64_t seed, const DetectOptions& options,
                       Workers workers = {});

struct SweepRow {
  double delta = 0.0;
  Vertex n = 0;
  EstimatorResult result;
};

std::vector<SweepRow> detection_sweep(double c,
                                      const std::vector<double>& delta_grid,
                                      const std::vector<Vertex>& n_grid,
                                      Flavor flavor, const Witness& witness,
                                      std::size_t trials, std::uint64_t seed,
                                      Workers workers = {});

struct VarianceReport {
  std::vector<Vertex> n_grid;
  std::vector<double> mean;
  std::vector<double> empirical_variance;
  std::vector<double> bound;  // d * n with d = c + delta
  std::vector<bool> flagged;  // variance > bound * (1 + 5 / sqrt(samples))
  double slope = 0.0;          // least-squares slope of variance against n
  std::size_t samples = 0;
};

VarianceReport efron_stein_check(const Witness& witness, const ModelSpec& spec,
                                 const std::vector<Vertex>& n_grid,
                                 std::size_t samples, std::uint64_t seed,
                                 Workers workers = {});

// Deletes one (seeded) edge from a shortest remaining cycle until no cycle of
// length <= k_max is left.
EditedGraph remove_short_cycles(const Graph& g, int k_max,
                                 std::uint64_t seed);

}  // namespace sbmc
