#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sbmc/edit_distance.h"
#include "sbmc/models.h"
#include "sbmc/parallel.h"

namespace sbmc {

inline constexpr double kMarginalTolerance = 1e-9;
inline constexpr double kDualityTolerance = 1e-6;

// Transport plan between two class distributions. mu is row-major,
// rows indexed by P classes and columns by Q classes.
struct CouplingPlan {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> mu;
  double cost = 0.0;

  double operator()(std::size_t i, std::size_t j) const {
    return mu[i * cols + j];
  }
};

struct DualWitness {
  std::vector<double> f;  // one value per class, 1-Lipschitz in d
  double objective = 0.0;  // |E_P f - E_Q f|
};

// min over couplings of E d(G, H), solved as a transportation problem by
// successive shortest augmenting paths.
CouplingPlan solve_primal(const GraphDistribution& p,
                          const GraphDistribution& q,
                          const DistanceMatrix& d);

// max over 1-Lipschitz f of |E_P f - E_Q f|, solved as a dense LP.
DualWitness solve_dual(const GraphDistribution& p, const GraphDistribution& q,
                       const DistanceMatrix& d);

struct OtReport {
  std::size_t classes = 0;
  double primal_cost = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;
  CouplingPlan plan;
  DualWitness witness;
};

// Exact optimal transport cost between two models at tiny n (<= 6, or 7
// with allow_seven).
OtReport ot_exact(const ModelSpec& p, const ModelSpec& q,
                  bool allow_seven = false);

// Largest violation of row/column marginals by a plan.
double marginal_violation(const CouplingPlan& plan, const GraphDistribution& p,
                          const GraphDistribution& q);

// Largest violation of |f(i) - f(j)| <= d(i, j).
double lipschitz_violation(const DualWitness& w, const DistanceMatrix& d);

struct MonteCarloEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t samples = 0;
};

// Naive coupling: shared spins, each pair's edge indicator in P coupled
// maximally with its indicator in Q. Returns the mean Hamming distance of
// the coupled pair, an upper bound on the coupled edit distance.
MonteCarloEstimate baseline_coupling_cost(const ModelSpec& p,
                                          const ModelSpec& q,
                                          std::size_t samples,
                                          std::uint64_t seed,
                                          Workers workers = {});

// One draw of the baseline coupling: (G ~ p, H ~ q) on shared spins.
std::pair<Graph, Graph> sample_baseline_coupling(const ModelSpec& p,
                                                 const ModelSpec& q,
                                                 std::uint64_t seed);

// |E(g) symmetric-difference E(h)| on the identity labeling.
std::size_t hamming_distance(const Graph& g, const Graph& h);

// Closed form of the baseline's expectation: sum over pairs of the mean
// |p_ij - q_ij| over i.i.d. uniform spins.
double baseline_coupling_expected(const ModelSpec& p, const ModelSpec& q);

struct GapEstimate {
  double estimate = 0.0;  // |mean_p - mean_q|
  double se = 0.0;
  double mean_p = 0.0;
  double mean_q = 0.0;
  std::size_t samples = 0;  // per model
  double exact_fraction = 1.0;  // share of samples with exact packing

  // Lower bound on the optimal coupling cost at roughly 97.5% confidence.
  double certified_lower_bound() const { return estimate - 2.0 * se; }
};

// Monte Carlo estimate of |E_P Y_k - E_Q Y_k|, which lower-bounds the optimal
// coupling cost because Y_k is 1-Lipschitz.
GapEstimate lb_cycle_gap(const ModelSpec& p, const ModelSpec& q, int k,
                         std::size_t samples, std::uint64_t seed,
                         Workers workers = {});

// delta^k / (2k).
double lb_formula(int k, double delta);

}  // namespace sbmc
