#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sbmc/classes.h"
#include "sbmc/graph.h"

namespace sbmc {

// Symmetric step kernel on [0,1]^2. Block r covers
// [boundaries[r], boundaries[r+1]).
class BlockKernel {
 public:
  BlockKernel(std::vector<double> boundaries, std::vector<double> values);

  static BlockKernel constant(double value);

  std::size_t block_count() const { return boundaries_.size() - 1; }
  const std::vector<double>& boundaries() const { return boundaries_; }
  double width(std::size_t r) const {
    return boundaries_[r + 1] - boundaries_[r];
  }
  double value(std::size_t r, std::size_t s) const {
    return values_[r * block_count() + s];
  }
  double sup() const { return sup_; }
  std::size_t block_of(double x) const;

  // Edge probability for a block pair at order n: value / n clamped to [0,1].
  double edge_probability(std::size_t r, std::size_t s, Vertex n) const;

 private:
  std::vector<double> boundaries_;
  std::vector<double> values_;  // row-major block_count x block_count
  double sup_ = 0.0;
};

enum class Flavor {
  kUniform,
  kPlantedAssortative,     // c + delta within halves
  kPlantedDisassortative,  // c + delta across halves
};

std::string_view to_string(Flavor flavor);
Flavor parse_flavor(std::string_view text);

struct ModelSpec {
  Vertex n = 0;
  double c = 1.0;
  double delta = 0.0;
  Flavor flavor = Flavor::kUniform;

  // Throws kInvalidArgument unless n >= 1, c > 0 and 0 <= delta <= c.
  void validate() const;
  bool planted() const { return flavor != Flavor::kUniform; }

  // Uniform: one block of value c. Planted: halves [0,1/2), [1/2,1).
  BlockKernel kernel() const;

  // Probability of a pair with equal (same_block) or different spins.
  double pair_probability(bool same_block) const;

  // The uniform model with the same n and c.
  ModelSpec uniform_counterpart() const {
    return {n, c, 0.0, Flavor::kUniform};
  }
};

struct TypedSample {
  Graph graph;
  std::vector<std::uint32_t> blocks;  // block label (spin bit) per vertex
  std::vector<double> positions;      // kernel coordinates; empty for sbm
};

// Vertex types i.i.d. uniform on [0,1]; each pair independently an edge with
// probability clamp(kappa(x_i, x_j) / n, 0, 1).
TypedSample sample_kernel_graph(const BlockKernel& kernel, Vertex n,
                                std::uint64_t seed);
TypedSample sample_kernel_graph(const ModelSpec& spec, std::uint64_t seed);

// Two-community block model with i.i.d. uniform spins. Requires a planted
// flavor and c + delta <= n.
TypedSample sample_sbm(const ModelSpec& spec, std::uint64_t seed);

// Draws from the model a spec describes: kernel sampling for uniform, the
// spin sampler for planted flavors.
Graph sample_graph(const ModelSpec& spec, std::uint64_t seed);

inline constexpr Vertex kExactDistributionCap = 6;

struct GraphDistribution {
  Vertex n = 0;
  std::vector<double> probability;  // indexed by class index
  std::vector<std::uint64_t> class_size;
};

// Exact class probabilities: labeled-graph probabilities averaged over all
// block assignments, folded onto catalog classes. n above 6 requires
// allow_seven and is still capped at 7.
GraphDistribution exact_distribution(const BlockKernel& kernel,
                                     const ClassCatalog& catalog,
                                     bool allow_seven = false);
GraphDistribution exact_distribution(const ModelSpec& spec,
                                     const ClassCatalog& catalog,
                                     bool allow_seven = false);

// CSV: class_index,class_size,probability
void write_distribution_csv(std::ostream& out, const GraphDistribution& dist);

// Closed forms for the edge-count statistic (no clamping assumed beyond
// what pair_probability applies).
double expected_edge_count(const ModelSpec& spec);
double edge_count_variance(const ModelSpec& spec);

}  // namespace sbmc
