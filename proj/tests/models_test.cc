#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sbmc/classes.h"
#include "sbmc/cycles.h"
#include "sbmc/error.h"
#include "sbmc/models.h"
#include "sbmc/summary.h"

namespace sbmc {
namespace {

constexpr Flavor kAllFlavors[] = {Flavor::kUniform, Flavor::kPlantedAssortative,
                                  Flavor::kPlantedDisassortative};

double edge_mean(const GraphDistribution& dist, const ClassCatalog& catalog) {
  double total = 0.0;
  for (const auto& c : catalog.classes()) {
    total += dist.probability[c.index] *
             static_cast<double>(c.representative.edge_count());
  }
  return total;
}

double edge_variance(const GraphDistribution& dist,
                     const ClassCatalog& catalog) {
  const double mean = edge_mean(dist, catalog);
  double total = 0.0;
  for (const auto& c : catalog.classes()) {
    const double e = static_cast<double>(c.representative.edge_count());
    total += dist.probability[c.index] * (e - mean) * (e - mean);
  }
  return total;
}

TEST(ModelSpec, Validation) {
  EXPECT_NO_THROW((ModelSpec{10, 2.0, 2.0, Flavor::kPlantedAssortative}.validate()));
  EXPECT_THROW((ModelSpec{10, 2.0, 2.5, Flavor::kPlantedAssortative}.validate()),
               Error);
  EXPECT_THROW((ModelSpec{10, 0.0, 0.0, Flavor::kUniform}.validate()), Error);
  EXPECT_THROW((ModelSpec{0, 1.0, 0.0, Flavor::kUniform}.validate()), Error);
  EXPECT_THROW((ModelSpec{10, 2.0, -0.1, Flavor::kUniform}.validate()), Error);
}

TEST(ModelSpec, FlavorNames) {
  for (Flavor f : kAllFlavors) EXPECT_EQ(parse_flavor(to_string(f)), f);
  EXPECT_EQ(parse_flavor("assortative"), Flavor::kPlantedAssortative);
  EXPECT_THROW(parse_flavor("bogus"), Error);
}

TEST(Kernel, BlockLookupAndClamping) {
  const BlockKernel k({0.0, 0.5, 1.0}, {3.0, 1.0, 1.0, 3.0});
  EXPECT_EQ(k.block_count(), 2u);
  EXPECT_EQ(k.block_of(0.0), 0u);
  EXPECT_EQ(k.block_of(0.49), 0u);
  EXPECT_EQ(k.block_of(0.5), 1u);
  EXPECT_DOUBLE_EQ(k.sup(), 3.0);
  EXPECT_DOUBLE_EQ(k.edge_probability(0, 0, 10), 0.3);
  EXPECT_DOUBLE_EQ(k.edge_probability(0, 0, 2), 1.0);
  EXPECT_THROW(BlockKernel({0.0, 1.0}, {1.0, 2.0}), Error);
  EXPECT_THROW(BlockKernel({0.0, 0.5, 1.0}, {1.0, 2.0, 3.0, 1.0}), Error);
}

TEST(Samplers, ZeroAndSaturatedKernels) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(sample_kernel_graph(BlockKernel::constant(0.0), 30, seed)
                  .graph.edge_count(),
              0u);
    EXPECT_EQ(sample_kernel_graph(BlockKernel::constant(30.0), 30, seed).graph,
              complete_graph(30));
  }
}

TEST(Samplers, DeterministicInSeed) {
  const ModelSpec spec{500, 3.0, 1.0, Flavor::kPlantedAssortative};
  EXPECT_EQ(sample_graph(spec, 9), sample_graph(spec, 9));
  EXPECT_NE(sample_graph(spec, 9), sample_graph(spec, 10));
  EXPECT_THROW(sample_sbm(ModelSpec{500, 3.0, 1.0, Flavor::kUniform}, 1),
               Error);
}

TEST(Samplers, UniformMeanEdgeCount) {
  const ModelSpec spec{1000, 2.0, 0.0, Flavor::kUniform};
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    counts.push_back(
        static_cast<double>(sample_graph(spec, seed).edge_count()));
  }
  const auto s = summarize(counts);
  EXPECT_NEAR(s.mean, 999.0, 3.0 * s.se);
  EXPECT_DOUBLE_EQ(expected_edge_count(spec), 999.0);
}

TEST(Samplers, NoCrossEdgesWhenBIsZero) {
  const ModelSpec spec{300, 3.0, 3.0, Flavor::kPlantedAssortative};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = sample_sbm(spec, seed);
    EXPECT_GT(s.graph.edge_count(), 0u);
    for (auto [i, j] : s.graph.edges()) ASSERT_EQ(s.blocks[i], s.blocks[j]);
  }
}

TEST(Samplers, CrossPairProbability) {
  const ModelSpec spec{10000, 2.0, 1.0, Flavor::kPlantedAssortative};
  std::vector<double> cross_rate;
  std::vector<double> within_rate;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = sample_sbm(spec, seed);
    double ones = 0;
    for (auto b : s.blocks) ones += b;
    const double zeros = spec.n - ones;
    double cross = 0;
    for (auto [i, j] : s.graph.edges()) cross += s.blocks[i] != s.blocks[j];
    const double within = static_cast<double>(s.graph.edge_count()) - cross;
    cross_rate.push_back(cross / (ones * zeros));
    within_rate.push_back(within /
                          (ones * (ones - 1) / 2 + zeros * (zeros - 1) / 2));
  }
  const auto cr = summarize(cross_rate);
  const auto wr = summarize(within_rate);
  EXPECT_NEAR(cr.mean, 1.0 / spec.n, 3.0 * cr.se);
  EXPECT_NEAR(wr.mean, 3.0 / spec.n, 3.0 * wr.se);
}

TEST(Samplers, PlantedAtZeroDeltaMatchesUniformTriangles) {
  const ModelSpec planted{1000, 2.0, 0.0, Flavor::kPlantedAssortative};
  const ModelSpec uniform{1000, 2.0, 0.0, Flavor::kUniform};
  std::vector<double> a;
  std::vector<double> b;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    a.push_back(static_cast<double>(count_k_cycles(sample_graph(planted, seed), 3)));
    b.push_back(static_cast<double>(
        count_k_cycles(sample_graph(uniform, seed + 1000000), 3)));
  }
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  EXPECT_NEAR(sa.mean, sb.mean, 3.0 * std::hypot(sa.se, sb.se));
}

TEST(Samplers, EdgeMarginalIsCOverNAtLargeN) {
  for (Flavor f : kAllFlavors) {
    const ModelSpec spec{1000, 3.0, 2.0, f};
    std::vector<double> counts;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
      counts.push_back(
          static_cast<double>(sample_graph(spec, seed).edge_count()));
    }
    const auto s = summarize(counts);
    EXPECT_NEAR(s.mean, 3.0 * 999.0 / 2.0, 3.0 * s.se) << to_string(f);
  }
}

TEST(ExactDistribution, TwoVertexExamples) {
  const auto catalog = ClassCatalog::build(2);
  const auto u = exact_distribution(ModelSpec{2, 1.0, 0.0, Flavor::kUniform},
                                    catalog);
  EXPECT_NEAR(u.probability[0], 0.5, 1e-15);
  EXPECT_NEAR(u.probability[1], 0.5, 1e-15);
  for (Flavor f : kAllFlavors) {
    for (double delta : {0.0, 0.25, 0.5}) {
      const auto d =
          exact_distribution(ModelSpec{2, 0.5, delta, f}, catalog);
      EXPECT_NEAR(d.probability[1], 0.25, 1e-15);
    }
    // c + delta <= n keeps every pair probability unclamped.
    for (double delta : {0.0, 0.5, 1.0}) {
      const auto d = exact_distribution(ModelSpec{2, 1.0, delta, f}, catalog);
      EXPECT_NEAR(d.probability[1], 0.5, 1e-15);
    }
  }
}

TEST(ExactDistribution, NormalizedAndMarginalsExactUpToSix) {
  for (Vertex n = 1; n <= 6; ++n) {
    const auto catalog = ClassCatalog::build(n);
    for (Flavor f : kAllFlavors) {
      for (double delta : {0.0, 0.5, 1.0}) {
        const ModelSpec spec{n, 1.0, delta, f};
        const auto d = exact_distribution(spec, catalog);
        double total = 0.0;
        for (double p : d.probability) {
          EXPECT_GE(p, 0.0);
          total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_NEAR(edge_mean(d, catalog), 1.0 * (n - 1) / 2.0, 1e-12);
        EXPECT_NEAR(edge_mean(d, catalog), expected_edge_count(spec), 1e-12);
        EXPECT_NEAR(edge_variance(d, catalog), edge_count_variance(spec),
                    1e-12)
            << n << " " << to_string(f) << " " << delta;
      }
    }
  }
}

TEST(ExactDistribution, ZeroDeltaCollapse) {
  for (Vertex n = 2; n <= 6; ++n) {
    const auto catalog = ClassCatalog::build(n);
    const auto u =
        exact_distribution(ModelSpec{n, 1.5, 0.0, Flavor::kUniform}, catalog);
    for (Flavor f : {Flavor::kPlantedAssortative,
                     Flavor::kPlantedDisassortative}) {
      const auto p = exact_distribution(ModelSpec{n, 1.5, 0.0, f}, catalog);
      for (std::size_t i = 0; i < u.probability.size(); ++i) {
        EXPECT_NEAR(p.probability[i], u.probability[i], 1e-12);
      }
    }
  }
}

TEST(ExactDistribution, FlavorsDifferOnceDeltaIsPositive) {
  const auto catalog = ClassCatalog::build(4);
  const auto a = exact_distribution(
      ModelSpec{4, 2.0, 1.0, Flavor::kPlantedAssortative}, catalog);
  const auto d = exact_distribution(
      ModelSpec{4, 2.0, 1.0, Flavor::kPlantedDisassortative}, catalog);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.probability.size(); ++i) {
    diff += std::abs(a.probability[i] - d.probability[i]);
  }
  EXPECT_GT(diff, 1e-3);
}

TEST(ExactDistribution, CapsAndCatalogMismatch) {
  const auto catalog = ClassCatalog::build(7);
  const ModelSpec spec{7, 1.0, 0.0, Flavor::kUniform};
  EXPECT_THROW(exact_distribution(spec, catalog), Error);
  const auto five = ClassCatalog::build(5);
  EXPECT_THROW(exact_distribution(ModelSpec{4, 1.0, 0.0, Flavor::kUniform}, five),
               Error);
}

TEST(ExactDistribution, SevenVerticesWhenAllowed) {
  const auto catalog = ClassCatalog::build(7);
  const ModelSpec spec{7, 1.0, 0.5, Flavor::kPlantedAssortative};
  const auto d = exact_distribution(spec, catalog, /*allow_seven=*/true);
  double total = 0.0;
  for (double p : d.probability) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(edge_mean(d, catalog), 3.0, 1e-12);
}

TEST(ExactDistribution, SamplerHistogramWithinTotalVariation) {
  const auto catalog = ClassCatalog::build(5);
  for (const ModelSpec& spec :
       {ModelSpec{5, 2.0, 1.5, Flavor::kPlantedAssortative},
        ModelSpec{5, 2.0, 1.5, Flavor::kPlantedDisassortative},
        ModelSpec{5, 2.0, 0.0, Flavor::kUniform}}) {
    const auto exact = exact_distribution(spec, catalog);
    std::vector<double> hist(catalog.size(), 0.0);
    constexpr std::uint64_t kSamples = 1'000'000;
    for (std::uint64_t seed = 0; seed < kSamples; ++seed) {
      hist[catalog.class_of(sample_graph(spec, seed))] += 1.0;
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
      tv += std::abs(hist[i] / kSamples - exact.probability[i]);
    }
    EXPECT_LE(tv / 2.0, 0.01) << to_string(spec.flavor);
  }
}

TEST(ExactDistribution, CsvExport) {
  const auto catalog = ClassCatalog::build(2);
  const auto d =
      exact_distribution(ModelSpec{2, 1.0, 0.0, Flavor::kUniform}, catalog);
  std::ostringstream out;
  write_distribution_csv(out, d);
  EXPECT_EQ(out.str(), "class_index,class_size,probability\n0,1,0.5\n1,1,0.5\n");
}

TEST(EdgeCount, VarianceClosedForms) {
  const ModelSpec uniform{1000, 2.0, 0.0, Flavor::kUniform};
  EXPECT_NEAR(edge_count_variance(uniform), 499500.0 * 0.002 * 0.998, 1e-9);
  // Planted variance exceeds the binomial value by the spin-mixing term.
  const ModelSpec planted{1000, 2.0, 1.0, Flavor::kPlantedAssortative};
  EXPECT_GT(edge_count_variance(planted), edge_count_variance(uniform));
}

}  // namespace
}  // namespace sbmc
