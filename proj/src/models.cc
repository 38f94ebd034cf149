#include "sbmc/models.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "sbmc/error.h"
#include "sbmc/rng.h"

namespace sbmc {
namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Independent Bernoulli edges between vertex groups with per-group-pair
// probabilities, visited by geometric skipping so the cost is proportional
// to the number of edges produced.
template <typename Prob>
Graph sample_grouped(Vertex n, const std::vector<std::vector<Vertex>>& groups,
                     Prob&& probability, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < groups.size(); ++r) {
    for (std::size_t s = r; s < groups.size(); ++s) {
      const double p = probability(r, s);
      const std::uint64_t nr = groups[r].size();
      const std::uint64_t ns = groups[s].size();
      const std::uint64_t total = r == s ? nr * (nr - (nr > 0)) / 2 : nr * ns;
      if (total == 0 || p <= 0.0) continue;
      std::uint64_t t = rng.geometric_skip(p, total);
      while (t < total) {
        if (r == s) {
          const auto [a, b] = triangular_pair(t);
          edges.emplace_back(groups[r][a], groups[r][b]);
        } else {
          edges.emplace_back(groups[r][t / ns], groups[s][t % ns]);
        }
        const std::uint64_t skip = rng.geometric_skip(p, total);
        if (skip >= total - t) break;
        t += 1 + skip;
      }
    }
  }
  return Graph(n, std::move(edges));
}

void require_planted(const ModelSpec& spec, const char* what) {
  if (!spec.planted()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + ": requires a planted flavor, got '" +
                    std::string(to_string(spec.flavor)) + "'");
  }
}

}  // namespace

BlockKernel::BlockKernel(std::vector<double> boundaries,
                         std::vector<double> values)
    : boundaries_(std::move(boundaries)), values_(std::move(values)) {
  if (boundaries_.size() < 2 || boundaries_.front() != 0.0 ||
      boundaries_.back() != 1.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "BlockKernel: boundaries must start at 0 and end at 1");
  }
  for (std::size_t r = 0; r + 1 < boundaries_.size(); ++r) {
    if (!(boundaries_[r] < boundaries_[r + 1])) {
      throw Error(ErrorKind::kInvalidArgument,
                  "BlockKernel: boundaries must be strictly increasing");
    }
  }
  const std::size_t blocks = block_count();
  if (values_.size() != blocks * blocks) {
    throw Error(ErrorKind::kInvalidArgument,
                "BlockKernel: value matrix must be blocks x blocks");
  }
  for (std::size_t r = 0; r < blocks; ++r) {
    for (std::size_t s = 0; s < blocks; ++s) {
      const double v = value(r, s);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::kInvalidArgument,
                    "BlockKernel: values must be finite and nonnegative");
      }
      if (v != value(s, r)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "BlockKernel: value matrix must be symmetric");
      }
      sup_ = std::max(sup_, v);
    }
  }
}

BlockKernel BlockKernel::constant(double value) {
  return BlockKernel({0.0, 1.0}, {value});
}

std::size_t BlockKernel::block_of(double x) const {
  const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
  const auto r = static_cast<std::size_t>(it - boundaries_.begin());
  return std::clamp<std::size_t>(r == 0 ? 0 : r - 1, 0, block_count() - 1);
}

double BlockKernel::edge_probability(std::size_t r, std::size_t s,
                                     Vertex n) const {
  return clamp_probability(value(r, s) / static_cast<double>(n));
}

std::string_view to_string(Flavor flavor) {
  switch (flavor) {
    case Flavor::kUniform:
      return "uniform";
    case Flavor::kPlantedAssortative:
      return "assortative";
    case Flavor::kPlantedDisassortative:
      return "disassortative";
  }
  return "unknown";
}

Flavor parse_flavor(std::string_view text) {
  if (text == "uniform") return Flavor::kUniform;
  if (text == "assortative" || text == "planted-assortative") {
    return Flavor::kPlantedAssortative;
  }
  if (text == "disassortative" || text == "planted-disassortative") {
    return Flavor::kPlantedDisassortative;
  }
  throw Error(ErrorKind::kParse,
              "unknown flavor '" + std::string(text) +
                  "' (expected uniform, assortative or disassortative)");
}

void ModelSpec::validate() const {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "model: n must be >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::kInvalidArgument, "model: c must be > 0");
  }
  if (!(delta >= 0.0 && delta <= c)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("model: need 0 <= delta <= c, got delta = {} and "
                            "c = {}",
                            delta, c));
  }
}

BlockKernel ModelSpec::kernel() const {
  validate();
  switch (flavor) {
    case Flavor::kUniform:
      return BlockKernel::constant(c);
    case Flavor::kPlantedAssortative:
      return BlockKernel({0.0, 0.5, 1.0},
                         {c + delta, c - delta, c - delta, c + delta});
    case Flavor::kPlantedDisassortative:
      return BlockKernel({0.0, 0.5, 1.0},
                         {c - delta, c + delta, c + delta, c - delta});
  }
  throw Error(ErrorKind::kInvalidArgument, "model: unknown flavor");
}

double ModelSpec::pair_probability(bool same_block) const {
  double value = c;
  if (flavor == Flavor::kPlantedAssortative) {
    value = same_block ? c + delta : c - delta;
  } else if (flavor == Flavor::kPlantedDisassortative) {
    value = same_block ? c - delta : c + delta;
  }
  return clamp_probability(value / static_cast<double>(n));
}

TypedSample sample_kernel_graph(const BlockKernel& kernel, Vertex n,
                                std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "sample: n must be >= 1");
  Rng rng(seed);
  TypedSample out;
  out.positions.resize(n);
  out.blocks.resize(n);
  std::vector<std::vector<Vertex>> groups(kernel.block_count());
  for (Vertex v = 0; v < n; ++v) {
    out.positions[v] = rng.uniform();
    out.blocks[v] = static_cast<std::uint32_t>(kernel.block_of(out.positions[v]));
    groups[out.blocks[v]].push_back(v);
  }
  out.graph = sample_grouped(
      n, groups,
      [&](std::size_t r, std::size_t s) {
        return kernel.edge_probability(r, s, n);
      },
      rng);
  return out;
}

TypedSample sample_kernel_graph(const ModelSpec& spec, std::uint64_t seed) {
  return sample_kernel_graph(spec.kernel(), spec.n, seed);
}

TypedSample sample_sbm(const ModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  require_planted(spec, "sample_sbm");
  if (spec.c + spec.delta > spec.n) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("sample_sbm: need c + delta <= n, got {} > {}",
                            spec.c + spec.delta, spec.n));
  }
  Rng rng(seed);
  TypedSample out;
  out.blocks.resize(spec.n);
  std::vector<std::vector<Vertex>> groups(2);
  for (Vertex v = 0; v < spec.n; ++v) {
    out.blocks[v] = static_cast<std::uint32_t>(rng() >> 63);
    groups[out.blocks[v]].push_back(v);
  }
  const double same = spec.pair_probability(true);
  const double cross = spec.pair_probability(false);
  out.graph = sample_grouped(
      spec.n, groups,
      [&](std::size_t r, std::size_t s) { return r == s ? same : cross; }, rng);
  return out;
}

Graph sample_graph(const ModelSpec& spec, std::uint64_t seed) {
  if (spec.planted() && spec.c + spec.delta <= spec.n) {
    return sample_sbm(spec, seed).graph;
  }
  return sample_kernel_graph(spec, seed).graph;
}

GraphDistribution exact_distribution(const BlockKernel& kernel,
                                     const ClassCatalog& catalog,
                                     bool allow_seven) {
  const Vertex n = catalog.n();
  const Vertex cap = allow_seven ? 7 : kExactDistributionCap;
  if (n > cap) {
    throw Error(ErrorKind::kCapExceeded,
                fmt::format("exact_distribution: n = {} exceeds the cap of {}"
                            "{}",
                            n, cap, allow_seven ? "" : " (7 needs opt-in)"));
  }
  const std::size_t blocks = kernel.block_count();
  const std::size_t pairs = pair_count(n);
  const std::size_t codes = std::size_t{1} << pairs;

  std::vector<long double> mass(catalog.size(), 0.0L);
  std::vector<double> by_code(codes);
  std::vector<std::size_t> assignment(n, 0);
  std::size_t assignments = 1;
  for (Vertex v = 0; v < n; ++v) assignments *= blocks;

  for (std::size_t a = 0; a < assignments; ++a) {
    std::size_t rest = a;
    double weight = 1.0;
    for (Vertex v = 0; v < n; ++v) {
      assignment[v] = rest % blocks;
      rest /= blocks;
      weight *= kernel.width(assignment[v]);
    }
    // Build probabilities of all codes; pair 0 ends up as the top bit.
    by_code[0] = 1.0;
    std::size_t size = 1;
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        const double p =
            kernel.edge_probability(assignment[i], assignment[j], n);
        for (std::size_t x = size; x-- > 0;) {
          const double base = by_code[x];
          by_code[2 * x + 1] = base * p;
          by_code[2 * x] = base * (1.0 - p);
        }
        size *= 2;
      }
    }
    for (std::size_t code = 0; code < codes; ++code) {
      mass[catalog.class_of(static_cast<PairCode>(code))] +=
          static_cast<long double>(weight) * by_code[code];
    }
  }

  GraphDistribution out;
  out.n = n;
  out.probability.reserve(catalog.size());
  long double total = 0.0L;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    out.probability.push_back(static_cast<double>(mass[i]));
    out.class_size.push_back(catalog.classes()[i].class_size);
    total += mass[i];
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInconsistent,
                fmt::format("exact_distribution: total mass {} differs from 1",
                            static_cast<double>(total)));
  }
  return out;
}

GraphDistribution exact_distribution(const ModelSpec& spec,
                                     const ClassCatalog& catalog,
                                     bool allow_seven) {
  if (spec.n != catalog.n()) {
    throw Error(ErrorKind::kSizeMismatch,
                "exact_distribution: spec.n differs from the catalog order");
  }
  return exact_distribution(spec.kernel(), catalog, allow_seven);
}

void write_distribution_csv(std::ostream& out, const GraphDistribution& dist) {
  out << "class_index,class_size,probability\n";
  for (std::size_t i = 0; i < dist.probability.size(); ++i) {
    out << fmt::format("{},{},{:.17g}\n", i, dist.class_size[i],
                       dist.probability[i]);
  }
}

double expected_edge_count(const ModelSpec& spec) {
  const double pairs = static_cast<double>(pair_count(spec.n));
  return pairs * 0.5 *
         (spec.pair_probability(true) + spec.pair_probability(false));
}

// Given the spins, the edge count is a sum of independent Bernoullis; the
// number S of same-spin pairs has mean C(n,2)/2 and variance n(n-1)/8.
double edge_count_variance(const ModelSpec& spec) {
  const double n = spec.n;
  const double pairs = static_cast<double>(pair_count(spec.n));
  const double same = spec.pair_probability(true);
  const double cross = spec.pair_probability(false);
  const double conditional =
      0.5 * pairs * (same * (1.0 - same) + cross * (1.0 - cross));
  const double spread = (same - cross) * (same - cross) * n * (n - 1.0) / 8.0;
  return conditional + spread;
}

}  // namespace sbmc
