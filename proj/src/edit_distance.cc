#include "sbmc/edit_distance.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>

#include "sbmc/error.h"

namespace sbmc {
namespace {

using Row = std::uint16_t;

struct Dense {
  Vertex n = 0;
  std::array<Row, kEditDistanceCap> adj{};
  int edges = 0;
};

Dense to_dense(const Graph& g) {
  Dense d;
  d.n = g.n();
  for (const auto& [i, j] : g.edges()) {
    d.adj[i] |= Row(1u << j);
    d.adj[j] |= Row(1u << i);
  }
  d.edges = static_cast<int>(g.edge_count());
  return d;
}

int degree_sequence_bound(const Dense& g, const Dense& h) {
  std::array<int, kEditDistanceCap> dg{};
  std::array<int, kEditDistanceCap> dh{};
  for (Vertex v = 0; v < g.n; ++v) {
    dg[v] = std::popcount(g.adj[v]);
    dh[v] = std::popcount(h.adj[v]);
  }
  std::sort(dg.begin(), dg.begin() + g.n);
  std::sort(dh.begin(), dh.begin() + h.n);
  int total = 0;
  for (Vertex v = 0; v < g.n; ++v) total += std::abs(dg[v] - dh[v]);
  return (total + 1) / 2;
}

// Branch and bound over injective assignments of g's vertices (in descending
// degree order) to h's vertices.
class Search {
 public:
  Search(const Dense& g, const Dense& h) : g_(g), h_(h) {
    for (Vertex v = 0; v < g.n; ++v) order_[v] = v;
    std::sort(order_.begin(), order_.begin() + g.n, [&](Vertex a, Vertex b) {
      return std::popcount(g.adj[a]) > std::popcount(g.adj[b]);
    });
    lower_ = std::max(std::abs(g.edges - h.edges), degree_sequence_bound(g, h));
    best_ = g.edges + h.edges;
  }

  int run() {
    if (best_ > lower_) descend(0, 0, 0, 0, 0);
    return best_;
  }

 private:
  // Internal edge counts among assigned vertices (g side) and their images
  // (h side) give the bound: pairs touching unassigned vertices differ by at
  // least the difference of the remaining edge counts.
  void descend(Vertex depth, Row used, int cost, int inner_g, int inner_h) {
    if (best_ == lower_) return;
    if (depth == g_.n) {
      best_ = std::min(best_, cost);
      return;
    }
    const Vertex v = order_[depth];
    for (Vertex w = 0; w < h_.n; ++w) {
      if (used >> w & 1) continue;
      int added = 0;
      int add_g = 0;
      int add_h = 0;
      for (Vertex t = 0; t < depth; ++t) {
        const bool eg = g_.adj[v] >> order_[t] & 1;
        const bool eh = h_.adj[w] >> image_[t] & 1;
        add_g += eg;
        add_h += eh;
        added += eg != eh;
      }
      const int next_cost = cost + added;
      const int rest = std::abs((g_.edges - inner_g - add_g) -
                                (h_.edges - inner_h - add_h));
      if (next_cost + rest >= best_) continue;
      image_[depth] = w;
      descend(depth + 1, Row(used | (1u << w)), next_cost, inner_g + add_g,
              inner_h + add_h);
      if (best_ == lower_) return;
    }
  }

  const Dense& g_;
  const Dense& h_;
  std::array<Vertex, kEditDistanceCap> order_{};
  std::array<Vertex, kEditDistanceCap> image_{};
  int lower_ = 0;
  int best_ = 0;
};

}  // namespace

int edit_distance(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) {
    throw Error(ErrorKind::kSizeMismatch,
                "edit_distance: graphs have different orders (" +
                    std::to_string(g.n()) + " vs " + std::to_string(h.n()) +
                    ")");
  }
  if (g.n() > kEditDistanceCap) {
    throw Error(ErrorKind::kCapExceeded,
                "edit_distance: n = " + std::to_string(g.n()) +
                    " exceeds the exact-search cap of " +
                    std::to_string(kEditDistanceCap));
  }
  const Dense dg = to_dense(g);
  const Dense dh = to_dense(h);
  return Search(dg, dh).run();
}

DistanceMatrix distance_matrix(std::span<const CanonicalClass> classes,
                               Workers workers) {
  DistanceMatrix d(classes.size());
  if (classes.empty()) return d;
  const Vertex n = classes.front().representative.n();
  for (const auto& cls : classes) {
    if (cls.representative.n() != n) {
      throw Error(ErrorKind::kSizeMismatch,
                  "distance_matrix: classes of different orders");
    }
  }
  if (n > kDistanceMatrixCap) {
    throw Error(ErrorKind::kCapExceeded,
                "distance_matrix: n = " + std::to_string(n) +
                    " exceeds the cap of " +
                    std::to_string(kDistanceMatrixCap));
  }
  std::vector<Dense> dense;
  dense.reserve(classes.size());
  for (const auto& cls : classes) dense.push_back(to_dense(cls.representative));
  // Rows write disjoint upper-triangle cells; mirrored afterwards.
  parallel_for(classes.size(), workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      d(i, j) = Search(dense[i], dense[j]).run();
    }
  });
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) d(i, j) = d(j, i);
  }
  return d;
}

}  // namespace sbmc
