#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbmc/graph.h"

namespace sbmc {

inline constexpr Vertex kExactBisectionCap = 20;

enum class BisectionMode { kExact, kHeuristic };

struct BisectionReport {
  std::size_t value = 0;
  bool exact = false;
  std::vector<std::uint8_t> partition;  // side (0 or 1) per vertex
};

struct HeuristicOptions {
  int restarts = 8;
  int max_passes = 30;
};

// Minimum bisection: fewest edges across a partition whose sides differ in
// size by at most one. Exact mode is branch and bound (n <= 20); heuristic
// mode is seeded multi-start Fiduccia-Mattheyses refinement and returns an
// upper bound.
BisectionReport min_bisection(const Graph& g, BisectionMode mode,
                              std::uint64_t seed = 0,
                              HeuristicOptions options = {});

std::size_t cut_size(const Graph& g, std::span<const std::uint8_t> partition);
bool is_balanced(std::span<const std::uint8_t> partition);

// Mean cut of `count` uniformly random balanced partitions.
double random_bisection_mean_cut(const Graph& g, int count,
                                 std::uint64_t seed);

}  // namespace sbmc
