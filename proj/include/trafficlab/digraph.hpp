#pragma once

#include <utility>
#include <vector>

#include "trafficlab/partition.hpp"

namespace trafficlab {

/// Directed multigraph. Parallel edges and self-loops are allowed; edge ids are
/// positions in `edges` and survive quotients and restrictions.
struct DiGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // (source, target)

  DiGraph() = default;
  DiGraph(int n, std::vector<std::pair<int, int>> e);

  int edge_count() const { return static_cast<int>(edges.size()); }
  int source(int e) const { return edges[static_cast<std::size_t>(e)].first; }
  int target(int e) const { return edges[static_cast<std::size_t>(e)].second; }
};

/// Undirected multigraph, used for forests and GCC graphs.
struct UGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Vertices are the blocks of p (block index = canonical label); edge e becomes
/// ([e-], [e+]). Edge count and ids unchanged.
DiGraph quotient(const DiGraph& g, const Partition& p);

/// Same vertex set, only the listed edges (in the listed order).
DiGraph edge_subgraph(const DiGraph& g, const std::vector<int>& edge_ids);

Partition weak_components(const DiGraph& g);
Partition components(const UGraph& g);

struct TwoEdgeDecomposition {
  std::vector<int> component_of_vertex;
  int component_count = 0;
  std::vector<int> cut_edges;  // ascending edge ids
  UGraph forest;               // vertices = components, one edge per cut edge
  int leaf_count = 0;          // isolated forest vertices count twice
};

TwoEdgeDecomposition two_edge_decompose(const DiGraph& g);

/// Bridges of the undirection. Loops are never bridges and neither are
/// parallel edges.
std::vector<int> bridges(const DiGraph& g);

/// Connected with no bridges (the empty graph on one vertex qualifies).
bool is_two_edge_connected(const DiGraph& g);

/// Connected and #E = #V - 1.
bool is_tree(const UGraph& g);

/// Leaf count of a forest with isolated vertices counting as two.
int forest_leaf_count(const UGraph& forest);

}  // namespace trafficlab
