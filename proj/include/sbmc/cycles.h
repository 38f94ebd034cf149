#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbmc/graph.h"
#include "sbmc/models.h"

namespace sbmc {

inline constexpr int kMaxCycleLength = 12;
inline constexpr std::size_t kCycleBudget = 1'000'000;
inline constexpr std::size_t kExactPackingBudget = 64;

// Flat storage of k-cycles. Each cycle is listed once, starting at its
// smallest vertex and oriented so that its second vertex is smaller than its
// last.
class CycleList {
 public:
  explicit CycleList(int k) : k_(k) {}

  int k() const { return k_; }
  std::size_t size() const { return k_ == 0 ? 0 : vertices_.size() / k_; }
  std::span<const Vertex> operator[](std::size_t i) const {
    return {vertices_.data() + i * k_, static_cast<std::size_t>(k_)};
  }
  void push(std::span<const Vertex> cycle) {
    vertices_.insert(vertices_.end(), cycle.begin(), cycle.end());
  }

 private:
  int k_;
  std::vector<Vertex> vertices_;
};

// Throws kBudgetExceeded once more than `budget` cycles are found, and
// kInvalidArgument for k outside [3, kMaxCycleLength].
CycleList enumerate_k_cycles(const Graph& g, int k,
                             std::size_t budget = kCycleBudget);

// X_k: number of k-cycles, each counted once.
std::uint64_t count_k_cycles(const Graph& g, int k,
                             std::size_t budget = kCycleBudget);

struct Packing {
  std::size_t size = 0;
  bool exact = false;  // false: greedy lower bound
  std::vector<std::size_t> chosen;  // indices into the cycle list
};

// Y_k: maximum number of pairwise edge-disjoint k-cycles. Conflict
// components with at most `exact_budget` cycles are solved exactly by
// branch and bound; larger ones fall back to a greedy lower bound.
Packing max_disjoint_packing(const Graph& g, int k,
                             std::size_t exact_budget = kExactPackingBudget);
Packing max_disjoint_packing(const CycleList& cycles,
                             std::size_t exact_budget = kExactPackingBudget);

// Z_k surrogate: unordered pairs of distinct k-cycles sharing a vertex.
std::uint64_t count_overlapping_pairs(const Graph& g, int k);
std::uint64_t count_overlapping_pairs(const CycleList& cycles);

struct CycleReport {
  int k = 0;
  std::uint64_t x_k = 0;
  std::uint64_t y_k = 0;
  bool y_k_exact = false;
  std::uint64_t z_k = 0;
};

CycleReport cycle_report(const Graph& g, int k);

// E_Q X_k = n(n-1)...(n-k+1) / (2k) * (c/n)^k.
double expected_cycles_uniform(std::uint64_t n, int k, double c);

// (c^k + delta^k) / (2k).
double expected_cycles_planted_limit(int k, double c, double delta);

// Exact finite-n mean of X_k under any flavor (unclamped probabilities).
// With uniform i.i.d. spins the per-cycle edge product averages to
// (c^k + s^k) / n^k, s = delta (assortative) or -delta (disassortative).
double expected_cycles(const ModelSpec& spec, int k);

}  // namespace sbmc
