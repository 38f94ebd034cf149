#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sbmc/classes.h"
#include "sbmc/graph.h"
#include "sbmc/parallel.h"

namespace sbmc {

inline constexpr Vertex kEditDistanceCap = 8;
inline constexpr Vertex kDistanceMatrixCap = 7;

// Quotient edit distance: min over vertex permutations pi of
// |E(pi(g)) symmetric-difference E(h)|. Exhaustive with pruning; both graphs
// must have the same order, at most kEditDistanceCap.
int edit_distance(const Graph& g, const Graph& h);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size)
      : size_(size), data_(size * size, 0) {}

  std::size_t size() const { return size_; }
  int operator()(std::size_t i, std::size_t j) const {
    return data_[i * size_ + j];
  }
  int& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }

 private:
  std::size_t size_ = 0;
  std::vector<int> data_;
};

// Pairwise edit distances between class representatives. All classes must
// share n <= kDistanceMatrixCap.
DistanceMatrix distance_matrix(std::span<const CanonicalClass> classes,
                               Workers workers = {});

}  // namespace sbmc
