#pragma once

#include <cstdint>
#include <vector>

#include "sbmc/graph.h"

namespace sbmc {

inline constexpr Vertex kDefaultEnumerationCap = 7;

struct CanonicalClass {
  Graph representative;  // canonical labeling (least edge-set code)
  PairCode code = 0;     // encode(representative)
  std::uint64_t class_size = 0;
  std::size_t index = 0;
};

// Every isomorphism class of graphs on n vertices, ordered by edge count and
// then by canonical code. Throws kCapExceeded when n > cap.
std::vector<CanonicalClass> enumerate_classes(
    Vertex n, Vertex cap = kDefaultEnumerationCap);

// Least code over all relabelings of g (n <= 8).
PairCode canonical_code(const Graph& g);

// Class list together with a table mapping every labeled code to its class.
// Used to fold distributions over labeled graphs onto classes.
class ClassCatalog {
 public:
  static ClassCatalog build(Vertex n, Vertex cap = kDefaultEnumerationCap);

  Vertex n() const { return n_; }
  const std::vector<CanonicalClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::size_t class_of(PairCode code) const { return lookup_[code]; }
  std::size_t class_of(const Graph& g) const;

 private:
  Vertex n_ = 0;
  std::vector<CanonicalClass> classes_;
  std::vector<std::uint16_t> lookup_;
};

}  // namespace sbmc
