#include <gtest/gtest.h>

#include <sstream>

#include "oracles.h"
#include "sbmc/edit_distance.h"
#include "sbmc/error.h"
#include "sbmc/graph.h"
#include "sbmc/rng.h"

namespace sbmc {
namespace {

Graph triangle() { return complete_graph(3); }

TEST(Graph, NormalizesAndDedupesEdges) {
  const Graph g(4, {{2, 1}, {1, 2}, {0, 3}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.degree(1), 1u);
}

TEST(Graph, RejectsSelfLoopsAndOutOfRange) {
  EXPECT_THROW(Graph(3, {{1, 1}}), Error);
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
}

TEST(Graph, ToggleAddsRemovesAndIsInvolution) {
  const Graph empty(2);
  const Graph one = toggle_edge(empty, 0, 1);
  EXPECT_EQ(one, Graph(2, {{0, 1}}));
  EXPECT_EQ(toggle_edge(one, 1, 0), empty);
  EXPECT_EQ(toggle_edge(triangle(), 0, 1), Graph(3, {{0, 2}, {1, 2}}));
  EXPECT_THROW(toggle_edge(empty, 0, 0), Error);
  EXPECT_THROW(toggle_edge(empty, 0, 2), Error);
}

TEST(Graph, EncodeDecodeRoundTrip) {
  for (const Graph& g : oracle::all_labeled_graphs(5)) {
    EXPECT_EQ(decode(5, encode(g)), g);
  }
}

TEST(Graph, PairIndexIsLexicographic) {
  std::size_t expected = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      EXPECT_EQ(pair_index(7, i, j), expected);
      ++expected;
    }
  }
}

TEST(Graph, TriangularPairInvertsColumnMajorIndex) {
  std::uint64_t t = 0;
  for (std::uint64_t b = 1; b < 200; ++b) {
    for (std::uint64_t a = 0; a < b; ++a) {
      const auto [x, y] = triangular_pair(t++);
      ASSERT_EQ(x, a);
      ASSERT_EQ(y, b);
    }
  }
}

TEST(EdgeList, RoundTrip) {
  const Graph g = oracle::random_graph(12, 0.3, 4);
  std::istringstream in(to_edge_list(g));
  EXPECT_EQ(read_edge_list(in), g);
}

TEST(EdgeList, SkipsComments) {
  std::istringstream in("# header\n3 2 # counts\n0 1\n# middle\n1 2\n");
  EXPECT_EQ(read_edge_list(in), path_graph(3));
}

TEST(EdgeList, ParseErrors) {
  for (const char* text : {"", "3", "3 1\n0 3\n", "3 2\n0 1\n", "3 1\n0 x\n",
                           "3 2\n0 1\n1 0\n", "3 1\n1 1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_edge_list(in), Error) << text;
  }
}

TEST(EdgeList, ReadsBundledTriangle) {
  EXPECT_EQ(read_edge_list_file(SBMC_DATA_DIR "/triangle.txt"), triangle());
  EXPECT_THROW(read_edge_list_file(SBMC_DATA_DIR "/missing.txt"), Error);
}

TEST(EditDistance, Examples) {
  const std::vector<Vertex> perm{2, 0, 1};
  EXPECT_EQ(edit_distance(triangle(), relabel(triangle(), perm)), 0);
  EXPECT_EQ(edit_distance(triangle(), Graph(3)), 3);
  EXPECT_EQ(edit_distance(path_graph(3), triangle()), 1);
  EXPECT_EQ(edit_distance(cycle_graph(4), complete_graph(4)), 2);
}

TEST(EditDistance, RejectsMismatchAndCap) {
  EXPECT_THROW(edit_distance(Graph(3), Graph(4)), Error);
  EXPECT_THROW(edit_distance(Graph(kEditDistanceCap + 1),
                             Graph(kEditDistanceCap + 1)),
               Error);
}

TEST(EditDistance, MatchesBruteForceExhaustivelyUpToFourVertices) {
  for (Vertex n = 1; n <= 4; ++n) {
    const auto graphs = oracle::all_labeled_graphs(n);
    for (const Graph& g : graphs) {
      for (const Graph& h : graphs) {
        ASSERT_EQ(edit_distance(g, h), oracle::edit_distance(g, h));
      }
    }
  }
}

TEST(EditDistance, MetricAxiomsExhaustivelyUpToFourVertices) {
  for (Vertex n = 1; n <= 4; ++n) {
    const auto graphs = oracle::all_labeled_graphs(n);
    const std::size_t m = graphs.size();
    std::vector<int> d(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        d[i * m + j] = edit_distance(graphs[i], graphs[j]);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        ASSERT_EQ(d[i * m + j], d[j * m + i]);
        ASSERT_GE(d[i * m + j], 0);
        for (std::size_t l = 0; l < m; ++l) {
          ASSERT_LE(d[i * m + l], d[i * m + j] + d[j * m + l]);
        }
      }
    }
  }
}

TEST(EditDistance, RandomTriplesUpToSevenVertices) {
  Rng rng(11);
  for (Vertex n : {5u, 6u, 7u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Graph a = oracle::random_graph(n, 0.5, rng());
      const Graph b = oracle::random_graph(n, 0.5, rng());
      const Graph c = oracle::random_graph(n, 0.5, rng());
      const int ab = edit_distance(a, b);
      const int bc = edit_distance(b, c);
      const int ac = edit_distance(a, c);
      EXPECT_EQ(ab, edit_distance(b, a));
      EXPECT_LE(ac, ab + bc);
      if (n <= 6) EXPECT_EQ(ab, oracle::edit_distance(a, b));
      EXPECT_EQ(edit_distance(a, a), 0);
    }
  }
}

TEST(EditDistance, PermutationInvarianceAndToggleBound) {
  Rng rng(12);
  for (Vertex n : {4u, 6u, 8u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Graph g = oracle::random_graph(n, 0.4, rng());
      const Graph h = oracle::random_graph(n, 0.4, rng());
      const auto perm = oracle::random_permutation(n, rng);
      const int base = edit_distance(g, h);
      EXPECT_EQ(edit_distance(relabel(g, perm), h), base);
      EXPECT_EQ(edit_distance(g, relabel(h, perm)), base);
      EXPECT_EQ(edit_distance(g, relabel(g, perm)), 0);
      const auto i = static_cast<Vertex>(rng.below(n));
      auto j = static_cast<Vertex>(rng.below(n - 1));
      if (j >= i) ++j;
      EXPECT_LE(edit_distance(g, toggle_edge(g, i, j)), 1);
    }
  }
}

}  // namespace
}  // namespace sbmc
