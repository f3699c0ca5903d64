#include <doctest.h>

#include "oracles.hpp"
#include "trafficlab/digraph.hpp"
#include "trafficlab/rng.hpp"

using namespace trafficlab;

namespace {

DiGraph random_digraph(Rng& rng, int n, int m, bool loops) {
  DiGraph g;
  g.vertex_count = n;
  while (g.edge_count() < m) {
    const int a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    if (a == b && !loops) continue;
    g.edges.emplace_back(a, b);
  }
  return g;
}

}  // namespace

TEST_CASE("bridges and two-edge decomposition match edge deletion") {
  Rng rng = derive_rng(11, {});
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 7));
    const int m = static_cast<int>(uniform_below(rng, 10));
    const DiGraph g = random_digraph(rng, n, m, true);
    const auto want = oracle::bridges_by_deletion(n, g.edges);
    CHECK(bridges(g) == want);

    const TwoEdgeDecomposition d = two_edge_decompose(g);
    CHECK(d.cut_edges == want);
    std::vector<std::pair<int, int>> kept;
    for (int e = 0; e < g.edge_count(); ++e)
      if (!std::binary_search(want.begin(), want.end(), e)) kept.push_back(g.edges[static_cast<std::size_t>(e)]);
    CHECK(d.component_count == oracle::component_count(n, kept));
    // Leaves of the bridge forest: degree-1 vertices, isolated ones twice.
    std::vector<int> degree(static_cast<std::size_t>(d.component_count), 0);
    for (auto [a, b] : d.forest.edges) {
      ++degree[static_cast<std::size_t>(a)];
      ++degree[static_cast<std::size_t>(b)];
    }
    int leaves = 0;
    for (int x : degree) leaves += x == 0 ? 2 : x == 1 ? 1 : 0;
    CHECK(d.leaf_count == leaves);
    CHECK(is_two_edge_connected(g) == (oracle::component_count(n, g.edges) == 1 && want.empty()));
  }
}

TEST_CASE("trees and leaf counts") {
  UGraph path{4, {{0, 1}, {1, 2}, {2, 3}}};
  CHECK(is_tree(path));
  CHECK(forest_leaf_count(path) == 2);
  UGraph star{4, {{0, 1}, {0, 2}, {0, 3}}};
  CHECK(forest_leaf_count(star) == 3);
  UGraph single{1, {}};
  CHECK(is_tree(single));
  CHECK(forest_leaf_count(single) == 2);
  UGraph doubled{2, {{0, 1}, {0, 1}}};
  CHECK_FALSE(is_tree(doubled));
  UGraph split{3, {{0, 1}}};
  CHECK_FALSE(is_tree(split));
  CHECK(forest_leaf_count(split) == 4);
}

TEST_CASE("quotients keep edge ids and relabel endpoints by block") {
  DiGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const Partition p = Partition::from_blocks(4, {{0, 2}, {1}, {3}});
  const DiGraph q = quotient(g, p);
  CHECK(q.vertex_count == 3);
  CHECK(q.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {0, 2}, {2, 0}});
  const DiGraph sub = edge_subgraph(g, {2, 0});
  CHECK(sub.vertex_count == 4);
  CHECK(sub.edges == std::vector<std::pair<int, int>>{{2, 3}, {0, 1}});
  CHECK(weak_components(sub).block_count() == 2);
}

TEST_CASE("the one-vertex graph and loops are two-edge-connected") {
  CHECK(is_two_edge_connected(DiGraph(1, {})));
  CHECK(is_two_edge_connected(DiGraph(1, {{0, 0}})));
  CHECK(is_two_edge_connected(DiGraph(2, {{0, 1}, {1, 0}})));
  CHECK_FALSE(is_two_edge_connected(DiGraph(2, {{0, 1}})));
  CHECK_FALSE(is_two_edge_connected(DiGraph(2, {})));
}
