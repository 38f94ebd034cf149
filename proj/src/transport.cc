#include "sbmc/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <fmt/format.h>

#include "sbmc/cycles.h"
#include "sbmc/error.h"
#include "sbmc/lp.h"
#include "sbmc/rng.h"
#include "sbmc/summary.h"

namespace sbmc {
namespace {

constexpr double kFlowEps = 1e-15;
constexpr double kMassTolerance = 1e-9;

void validate_instance(const GraphDistribution& p, const GraphDistribution& q,
                       const DistanceMatrix& d) {
  if (p.probability.size() != q.probability.size() ||
      p.probability.size() != d.size()) {
    throw Error(ErrorKind::kSizeMismatch,
                "transport: distributions and distance matrix must share one "
                "class enumeration");
  }
  auto check_mass = [](const GraphDistribution& dist, const char* name) {
    double total = 0.0;
    for (double x : dist.probability) {
      if (x < -kFlowEps) {
        throw Error(ErrorKind::kInvalidArgument,
                    fmt::format("transport: negative mass in {}", name));
      }
      total += x;
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("transport: {} sums to {}, not 1", name, total));
    }
  };
  check_mass(p, "p");
  check_mass(q, "q");
}

// Successive shortest paths on source -> P classes -> Q classes -> sink with
// node potentials; all arc costs are small integers so reduced costs stay
// exact in floating point.
class Transportation {
 public:
  Transportation(const GraphDistribution& p, const GraphDistribution& q,
                 const DistanceMatrix& d)
      : size_(d.size()), nodes_(2 * size_ + 2), out_(nodes_) {
    const std::size_t source = 0;
    const std::size_t sink = nodes_ - 1;
    for (std::size_t i = 0; i < size_; ++i) {
      if (p.probability[i] > 0.0) add_arc(source, 1 + i, p.probability[i], 0);
      if (q.probability[i] > 0.0) {
        add_arc(1 + size_ + i, sink, q.probability[i], 0);
      }
    }
    middle_.assign(size_ * size_, SIZE_MAX);
    for (std::size_t i = 0; i < size_; ++i) {
      if (!(p.probability[i] > 0.0)) continue;
      for (std::size_t j = 0; j < size_; ++j) {
        if (!(q.probability[j] > 0.0)) continue;
        middle_[i * size_ + j] = arcs_.size();
        add_arc(1 + i, 1 + size_ + j, std::numeric_limits<double>::infinity(),
                d(i, j));
      }
    }
  }

  CouplingPlan solve(double supply) {
    const std::size_t source = 0;
    const std::size_t sink = nodes_ - 1;
    std::vector<double> potential(nodes_, 0.0);
    std::vector<double> dist(nodes_);
    std::vector<std::size_t> via(nodes_);
    const double inf = std::numeric_limits<double>::infinity();
    double remaining = supply;
    const std::size_t iteration_cap = 64 * (arcs_.size() + nodes_);
    std::size_t iterations = 0;
    while (remaining > kFlowEps) {
      if (++iterations > iteration_cap) {
        throw Error(ErrorKind::kInconsistent,
                    "solve_primal: augmenting-path iteration cap reached");
      }
      std::fill(dist.begin(), dist.end(), inf);
      std::fill(via.begin(), via.end(), SIZE_MAX);
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      dist[source] = 0.0;
      heap.emplace(0.0, source);
      while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        for (std::size_t a : out_[u]) {
          const Arc& arc = arcs_[a];
          if (arc.capacity <= kFlowEps) continue;
          const double nd = du + arc.cost + potential[u] - potential[arc.to];
          if (nd < dist[arc.to]) {
            dist[arc.to] = nd;
            via[arc.to] = a;
            heap.emplace(nd, arc.to);
          }
        }
      }
      if (dist[sink] == inf) break;
      for (std::size_t v = 0; v < nodes_; ++v) {
        potential[v] += std::min(dist[v], dist[sink]);
      }
      double push = remaining;
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        push = std::min(push, arcs_[via[v]].capacity);
      }
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].capacity -= push;
        arcs_[via[v] ^ 1].capacity += push;
      }
      remaining -= push;
    }

    CouplingPlan plan;
    plan.rows = size_;
    plan.cols = size_;
    plan.mu.assign(size_ * size_, 0.0);
    for (std::size_t cell = 0; cell < middle_.size(); ++cell) {
      if (middle_[cell] == SIZE_MAX) continue;
      // Flow on a forward arc is the capacity of its reverse arc.
      plan.mu[cell] = arcs_[middle_[cell] ^ 1].capacity;
      plan.cost += plan.mu[cell] * arcs_[middle_[cell]].cost;
    }
    return plan;
  }

 private:
  struct Arc {
    std::size_t to;
    double capacity;
    double cost;
  };

  void add_arc(std::size_t from, std::size_t to, double capacity,
               double cost) {
    out_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity, cost});
    out_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0.0, -cost});
  }

  std::size_t size_;
  std::size_t nodes_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> middle_;
};

}  // namespace

CouplingPlan solve_primal(const GraphDistribution& p,
                          const GraphDistribution& q,
                          const DistanceMatrix& d) {
  validate_instance(p, q, d);
  double supply_p = 0.0;
  double supply_q = 0.0;
  for (double x : p.probability) supply_p += std::max(x, 0.0);
  for (double x : q.probability) supply_q += std::max(x, 0.0);
  CouplingPlan plan = Transportation(p, q, d).solve(std::min(supply_p, supply_q));
  if (marginal_violation(plan, p, q) > kMarginalTolerance) {
    throw Error(ErrorKind::kInconsistent,
                "solve_primal: plan violates the marginals");
  }
  return plan;
}

DualWitness solve_dual(const GraphDistribution& p, const GraphDistribution& q,
                       const DistanceMatrix& d) {
  validate_instance(p, q, d);
  const std::size_t size = d.size();
  // Shifted so that f >= 0: f(i) - f(j) <= d(i, j) and f(i) <= diameter.
  int diameter = 0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) diameter = std::max(diameter, d(i, j));
  }
  const std::size_t rows = size * (size - (size > 0)) + size;
  std::vector<double> a(rows * size, 0.0);
  std::vector<double> b(rows, 0.0);
  std::size_t row = 0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i == j) continue;
      a[row * size + i] = 1.0;
      a[row * size + j] = -1.0;
      b[row] = d(i, j);
      ++row;
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    a[row * size + i] = 1.0;
    b[row] = diameter;
    ++row;
  }
  std::vector<double> gain(size);
  for (std::size_t i = 0; i < size; ++i) {
    gain[i] = p.probability[i] - q.probability[i];
  }
  const LpResult lp = maximize(a, b, gain);
  if (lp.status != LpStatus::kOptimal) {
    throw Error(ErrorKind::kInconsistent, "solve_dual: LP not optimal");
  }
  DualWitness w;
  w.f = lp.x;
  double objective = 0.0;
  for (std::size_t i = 0; i < size; ++i) objective += gain[i] * w.f[i];
  w.objective = std::abs(objective);
  return w;
}

OtReport ot_exact(const ModelSpec& p, const ModelSpec& q, bool allow_seven) {
  p.validate();
  q.validate();
  if (p.n != q.n) {
    throw Error(ErrorKind::kSizeMismatch,
                "ot_exact: both models need the same n");
  }
  const Vertex cap = allow_seven ? 7 : kExactDistributionCap;
  if (p.n > cap) {
    throw Error(ErrorKind::kCapExceeded,
                fmt::format("ot_exact: n = {} exceeds the cap of {}", p.n, cap));
  }
  const ClassCatalog catalog = ClassCatalog::build(p.n);
  const GraphDistribution dp = exact_distribution(p, catalog, allow_seven);
  const GraphDistribution dq = exact_distribution(q, catalog, allow_seven);
  const DistanceMatrix d = distance_matrix(catalog.classes());
  OtReport report;
  report.classes = catalog.size();
  report.plan = solve_primal(dp, dq, d);
  report.witness = solve_dual(dp, dq, d);
  report.primal_cost = report.plan.cost;
  report.dual_objective = report.witness.objective;
  report.gap = std::abs(report.primal_cost - report.dual_objective);
  return report;
}

double marginal_violation(const CouplingPlan& plan, const GraphDistribution& p,
                          const GraphDistribution& q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < plan.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < plan.cols; ++j) row += plan(i, j);
    worst = std::max(worst, std::abs(row - p.probability[i]));
  }
  for (std::size_t j = 0; j < plan.cols; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < plan.rows; ++i) col += plan(i, j);
    worst = std::max(worst, std::abs(col - q.probability[j]));
  }
  for (double x : plan.mu) worst = std::max(worst, -x - 1e-12);
  return worst;
}

double lipschitz_violation(const DualWitness& w, const DistanceMatrix& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      worst = std::max(worst, std::abs(w.f[i] - w.f[j]) - d(i, j));
    }
  }
  return worst;
}

std::pair<Graph, Graph> sample_baseline_coupling(const ModelSpec& p,
                                                 const ModelSpec& q,
                                                 std::uint64_t seed) {
  p.validate();
  q.validate();
  if (p.n != q.n) {
    throw Error(ErrorKind::kSizeMismatch,
                "baseline coupling: both models need the same n");
  }
  const Vertex n = p.n;
  Rng rng(seed);
  std::vector<std::vector<Vertex>> groups(2);
  for (Vertex v = 0; v < n; ++v) groups[rng() >> 63].push_back(v);
  std::vector<Edge> edges_p;
  std::vector<Edge> edges_q;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t s = r; s < 2; ++s) {
      const bool same = r == s;
      const double pp = p.pair_probability(same);
      const double qq = q.pair_probability(same);
      const double hi = std::max(pp, qq);
      const double lo = std::min(pp, qq);
      const std::uint64_t nr = groups[r].size();
      const std::uint64_t ns = groups[s].size();
      const std::uint64_t total = same ? nr * (nr - (nr > 0)) / 2 : nr * ns;
      if (total == 0 || hi <= 0.0) continue;
      // A shared uniform U per pair: edge in P iff U < pp, in Q iff U < qq.
      // Pairs with U < hi are visited by skipping; U | U < hi is uniform.
      std::uint64_t t = rng.geometric_skip(hi, total);
      while (t < total) {
        Vertex a;
        Vertex b;
        if (same) {
          const auto [x, y] = triangular_pair(t);
          a = groups[r][x];
          b = groups[r][y];
        } else {
          a = groups[r][t / ns];
          b = groups[s][t % ns];
        }
        const bool both = rng.uniform() * hi < lo;
        if (both || pp == hi) edges_p.emplace_back(a, b);
        if (both || qq == hi) edges_q.emplace_back(a, b);
        const std::uint64_t skip = rng.geometric_skip(hi, total);
        if (skip >= total - t) break;
        t += 1 + skip;
      }
    }
  }
  return {Graph(n, std::move(edges_p)), Graph(n, std::move(edges_q))};
}

std::size_t hamming_distance(const Graph& g, const Graph& h) {
  const auto eg = g.edges();
  const auto eh = h.edges();
  std::size_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < eg.size() && j < eh.size()) {
    if (eg[i] == eh[j]) {
      ++common;
      ++i;
      ++j;
    } else if (eg[i] < eh[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return eg.size() + eh.size() - 2 * common;
}

MonteCarloEstimate baseline_coupling_cost(const ModelSpec& p,
                                          const ModelSpec& q,
                                          std::size_t samples,
                                          std::uint64_t seed,
                                          Workers workers) {
  std::vector<double> values(samples);
  parallel_for(samples, workers, [&](std::size_t s) {
    const auto [g, h] = sample_baseline_coupling(p, q, stream_seed(seed, s));
    values[s] = static_cast<double>(hamming_distance(g, h));
  });
  const SampleSummary summary = summarize(values);
  return {summary.mean, summary.se, summary.count};
}

double baseline_coupling_expected(const ModelSpec& p, const ModelSpec& q) {
  const double pairs = static_cast<double>(pair_count(p.n));
  const double same = std::abs(p.pair_probability(true) - q.pair_probability(true));
  const double cross =
      std::abs(p.pair_probability(false) - q.pair_probability(false));
  return pairs * 0.5 * (same + cross);
}

GapEstimate lb_cycle_gap(const ModelSpec& p, const ModelSpec& q, int k,
                         std::size_t samples, std::uint64_t seed,
                         Workers workers) {
  if (samples < 100) {
    throw Error(ErrorKind::kInvalidArgument,
                "lb_cycle_gap: at least 100 samples per model required");
  }
  if (p.n != q.n) {
    throw Error(ErrorKind::kSizeMismatch,
                "lb_cycle_gap: both models need the same n");
  }
  std::vector<double> yp(samples);
  std::vector<double> yq(samples);
  std::vector<char> exact(2 * samples);
  parallel_for(2 * samples, workers, [&](std::size_t t) {
    const ModelSpec& spec = t % 2 == 0 ? p : q;
    const Graph g = sample_graph(spec, stream_seed(seed, t));
    const Packing packing = max_disjoint_packing(g, k);
    (t % 2 == 0 ? yp : yq)[t / 2] = static_cast<double>(packing.size);
    exact[t] = packing.exact;
  });
  const SampleSummary sp = summarize(yp);
  const SampleSummary sq = summarize(yq);
  GapEstimate out;
  out.mean_p = sp.mean;
  out.mean_q = sq.mean;
  out.estimate = std::abs(sp.mean - sq.mean);
  out.se = std::sqrt(sp.se * sp.se + sq.se * sq.se);
  out.samples = samples;
  out.exact_fraction =
      static_cast<double>(std::count(exact.begin(), exact.end(), 1)) /
      static_cast<double>(exact.size());
  return out;
}

double lb_formula(int k, double delta) {
  if (k < 3) {
    throw Error(ErrorKind::kInvalidArgument, "lb_formula: k must be >= 3");
  }
  return std::pow(delta, k) / (2.0 * k);
}

}  // namespace sbmc
