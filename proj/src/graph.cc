#include "sbmc/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sbmc/error.h"

namespace sbmc {

Graph::Graph(Vertex n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {}

Graph::Graph(Vertex n, std::vector<Edge> edges) : Graph(n) {
  for (auto& [i, j] : edges) {
    if (i == j) {
      throw Error(ErrorKind::kInvalidArgument,
                  "self-loop at vertex " + std::to_string(i));
    }
    if (i >= n || j >= n) {
      throw Error(ErrorKind::kInvalidArgument,
                  "edge (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") has an endpoint >= n = " + std::to_string(n));
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  for (const auto& [i, j] : edges) {
    ++offsets_[i + 1];
    ++offsets_[j + 1];
  }
  for (Vertex v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  neighbors_.resize(2 * edges.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Sorted edges fill each row in ascending order: for row i, neighbors j > i
  // arrive in order, and neighbors h < i arrive (as (h, i)) before any (i, j).
  for (const auto& [i, j] : edges) {
    neighbors_[fill[j]++] = i;
  }
  for (const auto& [i, j] : edges) {
    neighbors_[fill[i]++] = j;
  }
}

bool Graph::has_edge(Vertex i, Vertex j) const {
  if (i >= n_ || j >= n_ || i == j) return false;
  if (degree(i) > degree(j)) std::swap(i, j);
  const auto row = neighbors(i);
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex i = 0; i < n_; ++i) {
    for (Vertex j : neighbors(i)) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph toggle_edge(const Graph& g, Vertex i, Vertex j) {
  if (i == j || i >= g.n() || j >= g.n()) {
    throw Error(ErrorKind::kInvalidArgument,
                "toggle_edge: invalid vertex pair (" + std::to_string(i) +
                    ", " + std::to_string(j) + ") for n = " +
                    std::to_string(g.n()));
  }
  if (i > j) std::swap(i, j);
  auto edges = g.edges();
  const Edge e{i, j};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it != edges.end() && *it == e) {
    edges.erase(it);
  } else {
    edges.insert(it, e);
  }
  return Graph(g.n(), std::move(edges));
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.n()) {
    throw Error(ErrorKind::kSizeMismatch, "relabel: permutation size != n");
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& [i, j] : g.edges()) edges.emplace_back(perm[i], perm[j]);
  return Graph(g.n(), std::move(edges));
}

Graph complete_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path_graph(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph read_edge_list(std::istream& raw) {
  // '#' starts a comment that runs to the end of the line.
  std::stringstream in;
  for (std::string line; std::getline(raw, line);) {
    in << line.substr(0, line.find('#')) << '\n';
  }
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) {
    throw Error(ErrorKind::kParse,
                "edge list: expected header line \"n m\" with n, m >= 0");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    long long i = -1;
    long long j = -1;
    if (!(in >> i >> j)) {
      throw Error(ErrorKind::kParse, "edge list: expected " +
                                         std::to_string(m) + " edges, read " +
                                         std::to_string(e));
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorKind::kParse,
                  "edge list: vertex out of range on edge " +
                      std::to_string(e + 1));
    }
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  const std::size_t declared = edges.size();
  Graph g(static_cast<Vertex>(n), std::move(edges));
  if (g.edge_count() != declared) {
    throw Error(ErrorKind::kParse, "edge list: duplicate edges");
  }
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open edge list file '" + path + "'");
  }
  return read_edge_list(in);
}

std::pair<std::uint64_t, std::uint64_t> triangular_pair(std::uint64_t t) {
  auto b = static_cast<std::uint64_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(t))) / 2.0);
  while (b * (b - 1) / 2 > t) --b;
  while ((b + 1) * b / 2 <= t) ++b;
  return {t - b * (b - 1) / 2, b};
}

PairCode encode(const Graph& g) {
  if (g.n() > kMaxCodedVertices) {
    throw Error(ErrorKind::kCapExceeded,
                "encode: n = " + std::to_string(g.n()) + " exceeds " +
                    std::to_string(kMaxCodedVertices));
  }
  const std::size_t m = pair_count(g.n());
  PairCode code = 0;
  for (const auto& [i, j] : g.edges()) {
    code |= PairCode{1} << (m - 1 - pair_index(g.n(), i, j));
  }
  return code;
}

Graph decode(Vertex n, PairCode code) {
  if (n > kMaxCodedVertices) {
    throw Error(ErrorKind::kCapExceeded, "decode: n too large");
  }
  const std::size_t m = pair_count(n);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (code >> (m - 1 - pair_index(n, i, j)) & 1) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace sbmc
