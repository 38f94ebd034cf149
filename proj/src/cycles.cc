#include "sbmc/cycles.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "sbmc/error.h"

namespace sbmc {
namespace {

void check_length(int k) {
  if (k < 3 || k > kMaxCycleLength) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("cycle length k = {} outside [3, {}]", k,
                            kMaxCycleLength));
  }
}

[[noreturn]] void budget_exceeded(int k, std::size_t budget) {
  throw Error(ErrorKind::kBudgetExceeded,
              fmt::format("more than {} cycles of length {}; enumeration "
                          "refused rather than truncated",
                          budget, k));
}

// Walks simple paths start = v0 < v1..v(k-1) and reports each closed one
// once: the start is the smallest vertex and v1 < v(k-1) fixes orientation.
template <typename OnCycle>
void walk_cycles(const Graph& g, int k, OnCycle&& on_cycle) {
  const Vertex n = g.n();
  std::vector<Vertex> path(k);
  std::vector<char> on_path(n, 0);
  std::vector<std::size_t> cursor(k, 0);
  for (Vertex start = 0; start < n; ++start) {
    if (g.degree(start) < 2) continue;
    path[0] = start;
    on_path[start] = 1;
    int depth = 0;
    cursor[0] = 0;
    while (depth >= 0) {
      const auto row = g.neighbors(path[depth]);
      if (cursor[depth] == row.size()) {
        if (depth > 0) on_path[path[depth]] = 0;
        --depth;
        continue;
      }
      const Vertex next = row[cursor[depth]++];
      if (next <= start || on_path[next]) continue;
      if (depth + 1 == k - 1) {
        if (path[1] < next && g.has_edge(next, start)) {
          path[k - 1] = next;
          on_cycle(std::span<const Vertex>(path));
        }
        continue;
      }
      ++depth;
      path[depth] = next;
      on_path[next] = 1;
      cursor[depth] = 0;
    }
    on_path[start] = 0;
  }
}

std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

using Mask = std::uint64_t;

// Maximum independent set in a conflict graph of at most 64 nodes.
class IndependentSet {
 public:
  explicit IndependentSet(std::vector<Mask> adj) : adj_(std::move(adj)) {}

  Mask solve() {
    const std::size_t size = adj_.size();
    const Mask all = size == 64 ? ~Mask{0} : (Mask{1} << size) - 1;
    branch(all, 0, 0);
    return best_mask_;
  }

 private:
  // Greedy clique cover of `candidates`: an independent set takes at most
  // one node per clique.
  int clique_cover_bound(Mask candidates) const {
    int cliques = 0;
    while (candidates != 0) {
      const int v = std::countr_zero(candidates);
      Mask clique_candidates = candidates & adj_[v];
      candidates &= ~(Mask{1} << v);
      while (clique_candidates != 0) {
        const int u = std::countr_zero(clique_candidates);
        candidates &= ~(Mask{1} << u);
        clique_candidates &= adj_[u];
      }
      ++cliques;
    }
    return cliques;
  }

  void branch(Mask candidates, Mask chosen, int size) {
    // Nodes without conflicts among the candidates are always taken.
    for (Mask rest = candidates; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if ((adj_[v] & candidates) == 0) {
        chosen |= Mask{1} << v;
        candidates &= ~(Mask{1} << v);
        ++size;
      }
    }
    if (candidates == 0) {
      if (size > best_) {
        best_ = size;
        best_mask_ = chosen;
      }
      return;
    }
    if (size + clique_cover_bound(candidates) <= best_) return;
    int pivot = -1;
    int pivot_degree = -1;
    for (Mask rest = candidates; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj_[v] & candidates);
      if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    }
    const Mask bit = Mask{1} << pivot;
    branch(candidates & ~bit & ~adj_[pivot], chosen | bit, size + 1);
    branch(candidates & ~bit, chosen, size);
  }

  std::vector<Mask> adj_;
  int best_ = -1;
  Mask best_mask_ = 0;
};

// Repeatedly takes a node of least remaining conflict degree (lowest index on
// ties) and discards its neighbors.
std::vector<std::size_t> greedy_independent_set(
    const std::vector<std::vector<std::size_t>>& adj,
    const std::vector<std::size_t>& nodes) {
  std::vector<std::size_t> degree(adj.size(), 0);
  std::vector<char> removed(adj.size(), 1);
  for (std::size_t v : nodes) {
    degree[v] = adj[v].size();
    removed[v] = 0;
  }
  std::vector<std::size_t> chosen;
  std::size_t left = nodes.size();
  while (left > 0) {
    std::size_t pick = SIZE_MAX;
    for (std::size_t v : nodes) {
      if (!removed[v] && (pick == SIZE_MAX || degree[v] < degree[pick])) {
        pick = v;
      }
    }
    chosen.push_back(pick);
    std::vector<std::size_t> gone{pick};
    for (std::size_t u : adj[pick]) {
      if (!removed[u]) gone.push_back(u);
    }
    for (std::size_t u : gone) {
      removed[u] = 1;
      --left;
    }
    for (std::size_t u : gone) {
      for (std::size_t w : adj[u]) {
        if (!removed[w]) --degree[w];
      }
    }
  }
  return chosen;
}

}  // namespace

CycleList enumerate_k_cycles(const Graph& g, int k, std::size_t budget) {
  check_length(k);
  CycleList cycles(k);
  walk_cycles(g, k, [&](std::span<const Vertex> cycle) {
    if (cycles.size() >= budget) budget_exceeded(k, budget);
    cycles.push(cycle);
  });
  return cycles;
}

std::uint64_t count_k_cycles(const Graph& g, int k, std::size_t budget) {
  check_length(k);
  std::uint64_t count = 0;
  walk_cycles(g, k, [&](std::span<const Vertex>) {
    if (count >= budget) budget_exceeded(k, budget);
    ++count;
  });
  return count;
}

Packing max_disjoint_packing(const Graph& g, int k, std::size_t exact_budget) {
  return max_disjoint_packing(enumerate_k_cycles(g, k), exact_budget);
}

Packing max_disjoint_packing(const CycleList& cycles,
                             std::size_t exact_budget) {
  const std::size_t count = cycles.size();
  const int k = cycles.k();
  Packing out;
  out.exact = true;
  if (count == 0) return out;

  // Conflict graph: cycles sharing an edge.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_edge;
  for (std::size_t i = 0; i < count; ++i) {
    const auto cycle = cycles[i];
    for (int t = 0; t < k; ++t) {
      by_edge[edge_key(cycle[t], cycle[(t + 1) % k])].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> adj(count);
  for (const auto& [key, users] : by_edge) {
    for (std::size_t a = 0; a < users.size(); ++a) {
      for (std::size_t b = a + 1; b < users.size(); ++b) {
        adj[users[a]].push_back(users[b]);
        adj[users[b]].push_back(users[a]);
      }
    }
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  // Components of the conflict graph are independent subproblems.
  std::vector<std::size_t> component(count, SIZE_MAX);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < count; ++s) {
    if (component[s] != SIZE_MAX) continue;
    std::vector<std::size_t> members{s};
    component[s] = components.size();
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t u : adj[members[head]]) {
        if (component[u] == SIZE_MAX) {
          component[u] = components.size();
          members.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }

  for (const auto& members : components) {
    if (members.size() == 1) {
      out.chosen.push_back(members[0]);
      continue;
    }
    if (members.size() <= std::min<std::size_t>(exact_budget, 64)) {
      std::unordered_map<std::size_t, int> local;
      for (std::size_t i = 0; i < members.size(); ++i) {
        local[members[i]] = static_cast<int>(i);
      }
      std::vector<Mask> masks(members.size(), 0);
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t u : adj[members[i]]) masks[i] |= Mask{1} << local[u];
      }
      Mask best = IndependentSet(std::move(masks)).solve();
      for (; best != 0; best &= best - 1) {
        out.chosen.push_back(members[std::countr_zero(best)]);
      }
    } else {
      out.exact = false;
      for (std::size_t v : greedy_independent_set(adj, members)) {
        out.chosen.push_back(v);
      }
    }
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  out.size = out.chosen.size();
  return out;
}

std::uint64_t count_overlapping_pairs(const Graph& g, int k) {
  return count_overlapping_pairs(enumerate_k_cycles(g, k));
}

std::uint64_t count_overlapping_pairs(const CycleList& cycles) {
  const std::size_t count = cycles.size();
  std::unordered_map<Vertex, std::vector<std::size_t>> by_vertex;
  for (std::size_t i = 0; i < count; ++i) {
    for (Vertex v : cycles[i]) by_vertex[v].push_back(i);
  }
  std::vector<std::size_t> stamp(count, SIZE_MAX);
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < count; ++i) {
    for (Vertex v : cycles[i]) {
      for (std::size_t j : by_vertex[v]) {
        if (j > i && stamp[j] != i) {
          stamp[j] = i;
          ++pairs;
        }
      }
    }
  }
  return pairs;
}

CycleReport cycle_report(const Graph& g, int k) {
  const CycleList cycles = enumerate_k_cycles(g, k);
  const Packing packing = max_disjoint_packing(cycles);
  CycleReport report;
  report.k = k;
  report.x_k = cycles.size();
  report.y_k = packing.size;
  report.y_k_exact = packing.exact;
  report.z_k = count_overlapping_pairs(cycles);
  return report;
}

double expected_cycles_uniform(std::uint64_t n, int k, double c) {
  check_length(k);
  if (n < static_cast<std::uint64_t>(k)) return 0.0;
  const double nd = static_cast<double>(n);
  double value = 1.0;
  for (int t = 0; t < k; ++t) value *= (nd - t) / nd * c;
  return value / (2.0 * k);
}

double expected_cycles_planted_limit(int k, double c, double delta) {
  check_length(k);
  return (std::pow(c, k) + std::pow(delta, k)) / (2.0 * k);
}

double expected_cycles(const ModelSpec& spec, int k) {
  check_length(k);
  if (spec.n < static_cast<Vertex>(k)) return 0.0;
  const double same = spec.pair_probability(true);
  const double cross = spec.pair_probability(false);
  // Spin-averaged edge product around a k-cycle: trace of the k-th power of
  // the 2x2 pair-probability matrix over 2^k.
  const double mean_part = std::pow((same + cross) / 2.0, k);
  const double spin_part = std::pow((same - cross) / 2.0, k);
  double falling = 1.0;
  for (int t = 0; t < k; ++t) falling *= static_cast<double>(spec.n) - t;
  return falling / (2.0 * k) * (mean_part + spin_part);
}

}  // namespace sbmc
