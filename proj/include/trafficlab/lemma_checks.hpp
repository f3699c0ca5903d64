#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trafficlab/colored_digraph.hpp"

namespace trafficlab {

/// Loopless undirected multigraphs on 1..max_vertices vertices with at most
/// max_edges edges that are connected and bridgeless, one per isomorphism
/// class. Edges are pairs (a<b), sorted.
std::vector<UGraph> two_edge_connected_multigraphs(int max_vertices, int max_edges);

/// One edge coloring per orbit of the automorphism group of g (which must be
/// in the form produced above), colors in [0, colors).
std::vector<std::vector<int>> edge_colorings(const UGraph& g, int colors);

/// Orients every edge a→b.
ColoredDigraph orient(const UGraph& g, const std::vector<int>& coloring);

struct ExponentGraphResult {
  std::int64_t configurations = 0;  // (s, π_s, (ω_c)_{c∈C_s}) combinations evaluated
  bool used_full_enumeration = false;
  std::vector<std::string> violations;
};

/// Checks on one test graph, for every admissible π:
///   exponent ≤ 0, equality iff every GCC(T,π,s) is a tree,
///   𝔣(T_{π,c})/2 = #Comp(T_{π,c}) at equality,
///   h_{s,c} injective on each component of T_{π,c} when GCC(T,π,s) is a tree.
/// The exponent is Σ_s E_s with E_s depending only on π_s and ω_{π,c}, c ∈ C_s,
/// so the check runs per string over the reachable (π_s, ω) combinations. If a
/// per-string test fails, the graph is rechecked over all π tuples directly.
ExponentGraphResult check_exponent_bound(const ColoredDigraph& t, const StringAssignment& a, const Guards& guards = {});

/// The same check over π tuples directly, using the general GCC and exponent
/// code. Slow; the reference for check_exponent_bound.
ExponentGraphResult check_exponent_bound_direct(const ColoredDigraph& t, const StringAssignment& a,
                                                const Guards& guards = {});

struct ExponentSweepReport {
  std::int64_t graphs = 0;          // uncolored isomorphism classes
  std::int64_t colored_graphs = 0;
  std::int64_t configurations = 0;
  std::int64_t full_enumerations = 0;
  std::int64_t violations = 0;
  std::vector<std::string> examples;  // first few violations
};

ExponentSweepReport exponent_bound_sweep(const StringAssignment& a, int max_vertices, int max_edges,
                                         const Guards& guards = {}, std::size_t max_examples = 20);

}  // namespace trafficlab
