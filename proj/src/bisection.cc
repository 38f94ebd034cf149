#include "sbmc/bisection.h"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "sbmc/error.h"
#include "sbmc/rng.h"

namespace sbmc {
namespace {

using Row = std::uint32_t;

class ExactBisection {
 public:
  explicit ExactBisection(const Graph& g) : n_(g.n()), adj_(g.n(), 0) {
    for (const auto& [i, j] : g.edges()) {
      adj_[i] |= Row{1} << j;
      adj_[j] |= Row{1} << i;
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      return std::popcount(adj_[a]) > std::popcount(adj_[b]);
    });
    capacity_ = (n_ + 1) / 2;
    // Initial incumbent: first half of the vertex order against the rest.
    Row side = 0;
    for (Vertex t = 0; t < n_ / 2; ++t) side |= Row{1} << order_[t];
    best_side_ = side;
    best_ = cut(side);
  }

  BisectionReport run() {
    if (n_ > 1) {
      const Vertex first = order_[0];
      descend(1, Row{1} << first, 0, 0);
    }
    BisectionReport report;
    report.exact = true;
    report.value = best_;
    report.partition.assign(n_, 0);
    for (Vertex v = 0; v < n_; ++v) report.partition[v] = best_side_ >> v & 1;
    return report;
  }

 private:
  std::size_t cut(Row side) const {
    std::size_t total = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (side >> v & 1) total += std::popcount(adj_[v] & ~side);
    }
    return total;
  }

  // side0/side1 hold assigned vertices; the first vertex of the order sits on
  // side 1 to break the mirror symmetry.
  void descend(Vertex depth, Row side1, Row side0, std::size_t partial) {
    const auto size1 = static_cast<Vertex>(std::popcount(side1));
    const auto size0 = static_cast<Vertex>(std::popcount(side0));
    if (size1 == capacity_ || size0 == capacity_) {
      // Everything left goes to the other side.
      Row rest = 0;
      for (Vertex t = depth; t < n_; ++t) rest |= Row{1} << order_[t];
      const Row final1 = size1 == capacity_ ? side1 : side1 | rest;
      const std::size_t value = cut(final1);
      if (value < best_) {
        best_ = value;
        best_side_ = final1;
      }
      return;
    }
    std::size_t bound = partial;
    for (Vertex t = depth; t < n_; ++t) {
      const Vertex v = order_[t];
      bound += std::min(std::popcount(adj_[v] & side0),
                        std::popcount(adj_[v] & side1));
    }
    if (bound >= best_) return;
    const Vertex v = order_[depth];
    const std::size_t to1 = std::popcount(adj_[v] & side0);
    const std::size_t to0 = std::popcount(adj_[v] & side1);
    // Try the cheaper side first.
    if (to1 <= to0) {
      descend(depth + 1, side1 | (Row{1} << v), side0, partial + to1);
      descend(depth + 1, side1, side0 | (Row{1} << v), partial + to0);
    } else {
      descend(depth + 1, side1, side0 | (Row{1} << v), partial + to0);
      descend(depth + 1, side1 | (Row{1} << v), side0, partial + to1);
    }
  }

  Vertex n_;
  std::vector<Row> adj_;
  std::vector<Vertex> order_;
  Vertex capacity_ = 0;
  std::size_t best_ = 0;
  Row best_side_ = 0;
};

std::vector<std::uint8_t> random_partition(Vertex n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (Vertex i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<std::uint8_t> side(n, 0);
  for (Vertex t = 0; t < n / 2; ++t) side[perm[t]] = 1;
  return side;
}

// Greedy graph growing: starting from a random vertex, repeatedly absorb the
// outside vertex whose move lowers the cut the most.
std::vector<std::uint8_t> grown_partition(const Graph& g, Rng& rng) {
  const Vertex n = g.n();
  std::vector<std::uint8_t> side(n, 0);
  std::vector<long> inside(n, 0);  // neighbors already in the grown side
  std::set<std::pair<long, Vertex>> queue;  // (-gain, v)
  auto gain = [&](Vertex v) {
    return 2 * inside[v] - static_cast<long>(g.degree(v));
  };
  for (Vertex v = 0; v < n; ++v) queue.emplace(-gain(v), v);
  Vertex seed_vertex = static_cast<Vertex>(rng.below(n));
  for (Vertex grown = 0; grown < n / 2; ++grown) {
    Vertex v = seed_vertex;
    if (grown > 0) v = queue.begin()->second;
    queue.erase({-gain(v), v});
    side[v] = 1;
    for (Vertex u : g.neighbors(v)) {
      if (side[u]) continue;
      queue.erase({-gain(u), u});
      ++inside[u];
      queue.emplace(-gain(u), u);
    }
  }
  return side;
}

// Fiduccia-Mattheyses passes with single-vertex moves. Moves always leave
// the heavier side (either side when equal); the best balanced prefix of each
// pass is kept.
std::size_t refine(const Graph& g, std::vector<std::uint8_t>& side,
                   int max_passes) {
  const Vertex n = g.n();
  std::size_t current = cut_size(g, side);
  std::vector<long> gain(n);
  std::vector<char> locked(n);
  std::vector<Vertex> moved;
  for (int pass = 0; pass < max_passes; ++pass) {
    std::array<std::set<std::pair<long, Vertex>>, 2> queues;
    long count1 = 0;
    for (Vertex v = 0; v < n; ++v) {
      long external = 0;
      for (Vertex u : g.neighbors(v)) external += side[u] != side[v];
      gain[v] = 2 * external - static_cast<long>(g.degree(v));
      queues[side[v]].emplace(-gain[v], v);
      count1 += side[v];
      locked[v] = 0;
    }
    long diff = count1 - (static_cast<long>(n) - count1);  // size1 - size0
    long running = static_cast<long>(current);
    long best_value = running;
    std::size_t best_prefix = 0;
    moved.clear();
    for (;;) {
      int from;
      if (diff > 0) {
        from = 1;
      } else if (diff < 0) {
        from = 0;
      } else if (queues[0].empty() || queues[1].empty()) {
        from = queues[0].empty() ? 1 : 0;
      } else {
        from = queues[0].begin()->first <= queues[1].begin()->first ? 0 : 1;
      }
      if (queues[from].empty()) break;
      const Vertex v = queues[from].begin()->second;
      queues[from].erase(queues[from].begin());
      locked[v] = 1;
      running -= gain[v];
      side[v] ^= 1;
      diff += from == 1 ? -2 : 2;
      moved.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (locked[u]) continue;
        queues[side[u]].erase({-gain[u], u});
        // v moved toward u's side if they now agree.
        gain[u] += side[u] == side[v] ? -2 : 2;
        queues[side[u]].emplace(-gain[u], u);
      }
      if (std::abs(diff) <= 1 && running < best_value) {
        best_value = running;
        best_prefix = moved.size();
      }
    }
    for (std::size_t t = moved.size(); t > best_prefix; --t) {
      side[moved[t - 1]] ^= 1;
    }
    if (static_cast<std::size_t>(best_value) >= current) break;
    current = static_cast<std::size_t>(best_value);
  }
  return current;
}

}  // namespace

BisectionReport min_bisection(const Graph& g, BisectionMode mode,
                              std::uint64_t seed, HeuristicOptions options) {
  if (mode == BisectionMode::kExact) {
    if (g.n() > kExactBisectionCap) {
      throw Error(ErrorKind::kCapExceeded,
                  fmt::format("min_bisection: exact mode supports n <= {}, "
                              "got {}; use heuristic mode",
                              kExactBisectionCap, g.n()));
    }
    return ExactBisection(g).run();
  }
  BisectionReport best;
  best.exact = false;
  best.value = SIZE_MAX;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    auto side = r % 2 == 0 ? grown_partition(g, rng)
                           : random_partition(g.n(), rng);
    const std::size_t value = refine(g, side, options.max_passes);
    if (value < best.value) {
      best.value = value;
      best.partition = std::move(side);
    }
  }
  return best;
}

std::size_t cut_size(const Graph& g, std::span<const std::uint8_t> partition) {
  if (partition.size() != g.n()) {
    throw Error(ErrorKind::kSizeMismatch,
                fmt::format("cut_size: partition has {} labels for {} vertices",
                            partition.size(), g.n()));
  }
  std::size_t total = 0;
  for (const auto& [i, j] : g.edges()) total += partition[i] != partition[j];
  return total;
}

bool is_balanced(std::span<const std::uint8_t> partition) {
  const auto ones = static_cast<long>(
      std::count(partition.begin(), partition.end(), std::uint8_t{1}));
  const auto zeros = static_cast<long>(partition.size()) - ones;
  return std::abs(ones - zeros) <= 1;
}

double random_bisection_mean_cut(const Graph& g, int count,
                                 std::uint64_t seed) {
  double total = 0.0;
  for (int t = 0; t < count; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    total += static_cast<double>(cut_size(g, random_partition(g.n(), rng)));
  }
  return count > 0 ? total / count : 0.0;
}

}  // namespace sbmc
