#pragma once

#include <functional>
#include <vector>

#include "trafficlab/color_graph.hpp"
#include "trafficlab/digraph.hpp"
#include "trafficlab/partition.hpp"
#include "trafficlab/scalar.hpp"

namespace trafficlab {

/// The uncolored skeleton of a test graph: a digraph with a color per edge.
struct ColoredDigraph {
  DiGraph graph;
  std::vector<int> edge_color;

  int vertex_count() const { return graph.vertex_count; }
  int edge_count() const { return graph.edge_count(); }
  /// Edge ids whose color satisfies `keep`, ascending.
  std::vector<int> edges_where(const std::function<bool(int color)>& keep) const;
};

/// One partition of V(T) per string.
using MultiPartition = std::vector<Partition>;

/// Components of T restricted to colors outside C_s.
Partition rho(const ColoredDigraph& t, const StringAssignment& a, int s);
MultiPartition rho_all(const ColoredDigraph& t, const StringAssignment& a);

/// π_s ≥ ρ_s for every s.
bool admissible(const ColoredDigraph& t, const StringAssignment& a, const MultiPartition& pi);

/// Meet of π_s over s ∈ S_c.
Partition omega(const MultiPartition& pi, const StringAssignment& a, int c);

/// (T|_c)/ω_{π,c}: every ω block is a vertex, including blocks without c edges.
struct ColorQuotient {
  int color = -1;
  Partition omega;
  DiGraph graph;              // edges in ascending original id order
  std::vector<int> edge_ids;  // original id of each quotient edge
  Partition components;       // of graph.vertex set
  int leaf_count = 0;         // of the bridge forest, isolated vertices count 2

  int vertex_count() const { return graph.vertex_count; }
  int component_count() const { return components.block_count(); }
};
ColorQuotient t_pi_c(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int c);

/// (T|_{C_s})/π_s.
struct StringQuotient {
  int string = -1;
  DiGraph graph;
  std::vector<int> edge_ids;
};
StringQuotient t_pi_s(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int s);

/// The block map ω_{π,c} → π_s for s ∈ S_c. Throws if it is not well defined.
std::vector<int> h_sc(const MultiPartition& pi, const StringAssignment& a, int s, int c);

/// Bipartite multigraph: left vertices are π_s blocks (ids 0..left_count-1),
/// right vertices are components of T_{π,c} for c ∈ C_s, one edge per ω_{π,c}
/// block joining its component to its π_s block.
struct GccGraph {
  struct Right {
    int color;
    int component;
  };
  struct EdgeTag {
    int color;
    int omega_block;
  };
  int string = -1;
  UGraph graph;
  int left_count = 0;
  std::vector<Right> right;       // right vertex id = left_count + index
  std::vector<EdgeTag> edge_tags; // parallel to graph.edges
  std::vector<ColorQuotient> quotients;  // for c ∈ C_s, ascending

  int right_vertex(int color, int component) const;
  int edge_of(int color, int omega_block) const;
  const ColorQuotient& quotient(int color) const;
};
GccGraph gcc(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int s);

struct GccWalk {
  std::vector<int> vertices;  // GCC vertex ids
  std::vector<int> edges;     // GCC edge ids, edges[k] joins vertices[k], vertices[k+1]
};

/// The walk in GCC(T,π,s) induced by an edge sequence that is a walk in
/// T/ω_{π,c} for some c ∈ C_s. Throws std::invalid_argument if π is not
/// admissible, the sequence is not such a walk, or the induced vertex sequence
/// fails to be a walk in the GCC graph.
GccWalk induced_gcc_walk(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int s,
                         const std::vector<int>& edge_sequence);

struct ExponentReport {
  Rational total;
  std::vector<Rational> per_string;  // #π_s - 1 + Σ_{c∈C_s} (𝔣/2 - #V)
};

/// Σ_s(#π_s - 1) + Σ_c #S_c (𝔣(T_{π,c})/2 - #V(T_{π,c})).
ExponentReport growth_exponent(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a);

bool all_gcc_trees(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a);

/// Visits every π with π_s ≥ ρ_s, strings varying fastest from the last one.
/// Throws GuardError when the tuple count exceeds the guard.
void for_each_admissible(const ColoredDigraph& t, const StringAssignment& a, const Guards& guards,
                         const std::function<void(const MultiPartition&)>& visit);

/// Visits every tuple of `strings` partitions of [0, n).
void for_each_multipartition(int n, int strings, const Guards& guards,
                             const std::function<void(const MultiPartition&)>& visit);

/// Visits every tuple with π_s ≥ lower[s].
void for_each_multipartition_above(const MultiPartition& lower, const Guards& guards,
                                   const std::function<void(const MultiPartition&)>& visit);

}  // namespace trafficlab
