#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sbmc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // always first < second

// Simple undirected labeled graph in compressed sparse row form. Immutable
// once built; neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n);

  // Builds from an edge list. Pairs are normalized to (min, max) and
  // deduplicated; self-loops or out-of-range endpoints throw.
  Graph(Vertex n, std::vector<Edge> edges);

  Vertex n() const { return n_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }

  bool has_edge(Vertex i, Vertex j) const;

  // Edges in ascending (i, j) order with i < j.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ &&
           a.neighbors_ == b.neighbors_;
  }

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

// Returns g with the pair {i, j} flipped.
Graph toggle_edge(const Graph& g, Vertex i, Vertex j);

// Returns g with vertex v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

Graph complete_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph path_graph(Vertex n);

// Edge-list text format: "n m" header, then m lines "i j" (0-based,
// ascending, i < j), LF terminated. Readers skip "#" comments.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

// Dense encoding for tiny graphs: bit (m - 1 - p) is set when pair p is an
// edge, pairs ordered lexicographically (0,1), (0,2), ..., (n-2,n-1).
// The most significant used bit is therefore pair (0,1), so comparing codes
// as integers compares edge-set bitstrings lexicographically.
using PairCode = std::uint64_t;
inline constexpr Vertex kMaxCodedVertices = 11;

constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Index of pair (i, j), i < j, in the lexicographic pair order.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Inverse of t = b(b-1)/2 + a over pairs a < b (column-major triangle).
std::pair<std::uint64_t, std::uint64_t> triangular_pair(std::uint64_t t);

PairCode encode(const Graph& g);
Graph decode(Vertex n, PairCode code);

}  // namespace sbmc
