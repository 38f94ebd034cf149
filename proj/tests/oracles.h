#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the Graph container.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "sbmc/graph.h"
#include "sbmc/rng.h"

namespace sbmc::oracle {

inline std::set<Edge> edge_set(const Graph& g) {
  const auto e = g.edges();
  return {e.begin(), e.end()};
}

inline std::set<Edge> permuted(const std::set<Edge>& edges,
                               const std::vector<Vertex>& perm) {
  std::set<Edge> out;
  for (auto [i, j] : edges) {
    Vertex a = perm[i];
    Vertex b = perm[j];
    if (a > b) std::swap(a, b);
    out.emplace(a, b);
  }
  return out;
}

inline int edit_distance(const Graph& g, const Graph& h) {
  const auto eg = edge_set(g);
  const auto eh = edge_set(h);
  std::vector<Vertex> perm(g.n());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  int best = INT32_MAX;
  do {
    const auto image = permuted(eg, perm);
    std::vector<Edge> diff;
    std::set_symmetric_difference(image.begin(), image.end(), eh.begin(),
                                  eh.end(), std::back_inserter(diff));
    best = std::min(best, static_cast<int>(diff.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Canonical form as the lexicographically least sorted edge vector over all
// relabelings (a different convention from the library's code; only used to
// count classes).
inline std::vector<Edge> canonical_edges(const Graph& g) {
  const auto eg = edge_set(g);
  std::vector<Vertex> perm(g.n());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::vector<Edge> best;
  bool first = true;
  do {
    const auto image = permuted(eg, perm);
    std::vector<Edge> v(image.begin(), image.end());
    if (first || v < best) best = v;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<Graph> all_labeled_graphs(Vertex n) {
  std::vector<Edge> pairs;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<Graph> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size());
       ++bits) {
    std::vector<Edge> edges;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (bits >> p & 1) edges.push_back(pairs[p]);
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

// k-cycles counted over vertex subsets: for each k-subset, the number of
// Hamiltonian cycles of the induced graph.
inline std::uint64_t count_cycles(const Graph& g, int k) {
  const Vertex n = g.n();
  std::uint64_t total = 0;
  std::vector<char> pick(n, 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < n; ++v) {
      if (pick[v]) subset.push_back(v);
    }
    // Orders starting at subset[0]; each cycle appears twice (directions).
    std::vector<Vertex> rest(subset.begin() + 1, subset.end());
    std::uint64_t directed = 0;
    do {
      bool ok = g.has_edge(subset[0], rest.front()) &&
                g.has_edge(rest.back(), subset[0]);
      for (std::size_t t = 0; ok && t + 1 < rest.size(); ++t) {
        ok = g.has_edge(rest[t], rest[t + 1]);
      }
      directed += ok;
    } while (std::next_permutation(rest.begin(), rest.end()));
    total += directed / 2;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return total;
}

// Edge sets of all k-cycles (as sorted edge vectors), brute force.
inline std::vector<std::vector<Edge>> cycle_edge_sets(const Graph& g, int k) {
  std::set<std::vector<Edge>> found;
  const Vertex n = g.n();
  std::vector<char> pick(n, 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < n; ++v) {
      if (pick[v]) subset.push_back(v);
    }
    std::vector<Vertex> rest(subset.begin() + 1, subset.end());
    do {
      std::vector<Vertex> cyc{subset[0]};
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      std::vector<Edge> edges;
      bool ok = true;
      for (int t = 0; t < k && ok; ++t) {
        Vertex a = cyc[t];
        Vertex b = cyc[(t + 1) % k];
        ok = g.has_edge(a, b);
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
      if (ok) {
        std::sort(edges.begin(), edges.end());
        found.insert(edges);
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return {found.begin(), found.end()};
}

// Maximum edge-disjoint packing by trying all subsets of cycles.
inline std::size_t max_packing(const Graph& g, int k) {
  const auto cycles = cycle_edge_sets(g, k);
  const std::size_t m = cycles.size();
  std::size_t best = 0;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
    const auto size = static_cast<std::size_t>(std::popcount(subset));
    if (size <= best) continue;
    std::set<Edge> used;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(subset >> i & 1)) continue;
      for (const Edge& e : cycles[i]) ok = ok && used.insert(e).second;
    }
    if (ok) best = size;
  }
  return best;
}

// Minimum bisection by enumerating all vertex subsets of size floor(n/2).
inline std::size_t min_bisection(const Graph& g) {
  const Vertex n = g.n();
  if (n < 2) return 0;
  const auto edges = g.edges();
  std::size_t best = SIZE_MAX;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != static_cast<int>(n / 2)) continue;
    std::size_t cut = 0;
    for (auto [i, j] : edges) cut += (mask >> i & 1) != (mask >> j & 1);
    best = std::min(best, cut);
  }
  return best;
}

// Girth by BFS from every vertex; 0 when acyclic.
inline std::size_t girth(const Graph& g) {
  std::size_t best = SIZE_MAX;
  const Vertex n = g.n();
  std::vector<long> dist(n);
  std::vector<long> parent(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<Vertex> queue;
    dist[s] = 0;
    parent[s] = -1;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop();
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else if (parent[u] != static_cast<long>(w)) {
          best = std::min<std::size_t>(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best == SIZE_MAX ? 0 : best;
}

inline Graph random_graph(Vertex n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

inline std::vector<Vertex> random_permutation(Vertex n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (Vertex i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

}  // namespace sbmc::oracle
