#include "trafficlab/colored_digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace trafficlab {

std::vector<int> ColoredDigraph::edges_where(const std::function<bool(int)>& keep) const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (keep(edge_color[static_cast<std::size_t>(e)])) out.push_back(e);
  return out;
}

namespace {

void check_string(const StringAssignment& a, int s) {
  if (s < 0 || s >= a.string_count()) throw std::invalid_argument("unknown string index " + std::to_string(s));
}

void check_pi(const ColoredDigraph& t, const StringAssignment& a, const MultiPartition& pi) {
  if (static_cast<int>(pi.size()) != a.string_count())
    throw std::invalid_argument("multipartition has the wrong number of strings");
  for (const auto& p : pi)
    if (p.ground_size() != t.vertex_count()) throw std::invalid_argument("multipartition has the wrong ground size");
}

}  // namespace

Partition rho(const ColoredDigraph& t, const StringAssignment& a, int s) {
  check_string(a, s);
  auto kept = t.edges_where([&](int c) { return !a.incident(s, c); });
  return weak_components(edge_subgraph(t.graph, kept));
}

MultiPartition rho_all(const ColoredDigraph& t, const StringAssignment& a) {
  MultiPartition out;
  for (int s = 0; s < a.string_count(); ++s) out.push_back(rho(t, a, s));
  return out;
}

bool admissible(const ColoredDigraph& t, const StringAssignment& a, const MultiPartition& pi) {
  check_pi(t, a, pi);
  for (int s = 0; s < a.string_count(); ++s)
    if (!rho(t, a, s).refines(pi[static_cast<std::size_t>(s)])) return false;
  return true;
}

Partition omega(const MultiPartition& pi, const StringAssignment& a, int c) {
  std::vector<Partition> parts;
  for (int s : a.strings_of(c)) parts.push_back(pi.at(static_cast<std::size_t>(s)));
  if (parts.empty()) throw std::invalid_argument("omega: color has no strings");
  return meet_all(parts);
}

ColorQuotient t_pi_c(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int c) {
  check_pi(t, a, pi);
  ColorQuotient q;
  q.color = c;
  q.omega = omega(pi, a, c);
  q.edge_ids = t.edges_where([&](int col) { return col == c; });
  q.graph = quotient(edge_subgraph(t.graph, q.edge_ids), q.omega);
  q.components = weak_components(q.graph);
  q.leaf_count = two_edge_decompose(q.graph).leaf_count;
  return q;
}

StringQuotient t_pi_s(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int s) {
  check_pi(t, a, pi);
  check_string(a, s);
  StringQuotient q;
  q.string = s;
  q.edge_ids = t.edges_where([&](int c) { return a.incident(s, c); });
  q.graph = quotient(edge_subgraph(t.graph, q.edge_ids), pi[static_cast<std::size_t>(s)]);
  return q;
}

std::vector<int> h_sc(const MultiPartition& pi, const StringAssignment& a, int s, int c) {
  if (!a.incident(s, c)) throw std::invalid_argument("h_sc: string not incident to color");
  Partition w = omega(pi, a, c);
  const Partition& ps = pi[static_cast<std::size_t>(s)];
  std::vector<int> map(static_cast<std::size_t>(w.block_count()), -1);
  for (int v = 0; v < w.ground_size(); ++v) {
    int& slot = map[static_cast<std::size_t>(w.block_of(v))];
    if (slot == -1)
      slot = ps.block_of(v);
    else if (slot != ps.block_of(v))
      throw std::logic_error("h_sc: omega does not refine pi_s");
  }
  return map;
}

int GccGraph::right_vertex(int color, int component) const {
  for (std::size_t r = 0; r < right.size(); ++r)
    if (right[r].color == color && right[r].component == component) return left_count + static_cast<int>(r);
  throw std::out_of_range("GccGraph::right_vertex: no such component");
}

int GccGraph::edge_of(int color, int omega_block) const {
  for (std::size_t e = 0; e < edge_tags.size(); ++e)
    if (edge_tags[e].color == color && edge_tags[e].omega_block == omega_block) return static_cast<int>(e);
  throw std::out_of_range("GccGraph::edge_of: no such edge");
}

const ColorQuotient& GccGraph::quotient(int color) const {
  for (const auto& q : quotients)
    if (q.color == color) return q;
  throw std::out_of_range("GccGraph::quotient: color not in C_s");
}

GccGraph gcc(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int s) {
  check_pi(t, a, pi);
  check_string(a, s);
  GccGraph g;
  g.string = s;
  g.left_count = pi[static_cast<std::size_t>(s)].block_count();
  for (int c : a.colors_of(s)) {
    g.quotients.push_back(t_pi_c(t, pi, a, c));
    const auto& q = g.quotients.back();
    for (int k = 0; k < q.component_count(); ++k) g.right.push_back({c, k});
  }
  g.graph.vertex_count = g.left_count + static_cast<int>(g.right.size());
  int offset = g.left_count;
  for (const auto& q : g.quotients) {
    auto h = h_sc(pi, a, s, q.color);
    for (int b = 0; b < q.vertex_count(); ++b) {
      g.graph.edges.emplace_back(offset + q.components.block_of(b), h[static_cast<std::size_t>(b)]);
      g.edge_tags.push_back({q.color, b});
    }
    offset += q.component_count();
  }
  return g;
}

GccWalk induced_gcc_walk(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a, int s,
                         const std::vector<int>& edge_sequence) {
  if (!admissible(t, a, pi)) throw std::invalid_argument("induced_gcc_walk: pi is not admissible");
  if (edge_sequence.empty()) throw std::invalid_argument("induced_gcc_walk: empty edge sequence");
  for (int e : edge_sequence)
    if (e < 0 || e >= t.edge_count()) throw std::invalid_argument("induced_gcc_walk: edge id out of range");
  bool is_walk = false;
  for (int c : a.colors_of(s)) {
    Partition w = omega(pi, a, c);
    bool ok = true;
    for (std::size_t j = 0; j + 1 < edge_sequence.size() && ok; ++j)
      ok = w.same_block(t.graph.target(edge_sequence[j]), t.graph.source(edge_sequence[j + 1]));
    is_walk = is_walk || ok;
  }
  if (!is_walk) throw std::invalid_argument("induced_gcc_walk: sequence is not a walk in any T/omega_c, c in C_s");

  GccGraph g = gcc(t, pi, a, s);
  const Partition& ps = pi[static_cast<std::size_t>(s)];
  GccWalk walk;
  walk.vertices.push_back(ps.block_of(t.graph.source(edge_sequence.front())));
  for (int e : edge_sequence) {
    int c = t.edge_color[static_cast<std::size_t>(e)];
    if (!a.incident(s, c)) continue;
    const ColorQuotient& q = g.quotient(c);
    int from = q.omega.block_of(t.graph.source(e));
    int to = q.omega.block_of(t.graph.target(e));
    int comp = g.right_vertex(c, q.components.block_of(from));
    walk.edges.push_back(g.edge_of(c, from));
    walk.vertices.push_back(comp);
    walk.edges.push_back(g.edge_of(c, to));
    walk.vertices.push_back(ps.block_of(t.graph.target(e)));
  }
  if (walk.vertices.back() != ps.block_of(t.graph.target(edge_sequence.back())))
    throw std::logic_error("induced_gcc_walk: walk does not end at the last target");
  // Each step must use a GCC edge joining its two vertices.
  for (std::size_t k = 0; k < walk.edges.size(); ++k) {
    auto [x, y] = g.graph.edges[static_cast<std::size_t>(walk.edges[k])];
    int u = walk.vertices[k], v = walk.vertices[k + 1];
    if (!((x == u && y == v) || (x == v && y == u)))
      throw std::logic_error("induced_gcc_walk: consecutive vertices are not joined by the induced edge");
  }
  return walk;
}

ExponentReport growth_exponent(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a) {
  check_pi(t, a, pi);
  std::vector<Rational> per_color(static_cast<std::size_t>(a.color_count()));
  for (int c = 0; c < a.color_count(); ++c) {
    ColorQuotient q = t_pi_c(t, pi, a, c);
    per_color[static_cast<std::size_t>(c)] = Rational(q.leaf_count, 2) - q.vertex_count();
  }
  ExponentReport r;
  r.total = 0;
  for (int s = 0; s < a.string_count(); ++s) {
    Rational e = pi[static_cast<std::size_t>(s)].block_count() - 1;
    for (int c : a.colors_of(s)) e += per_color[static_cast<std::size_t>(c)];
    r.per_string.push_back(e);
    r.total += e;
  }
  return r;
}

bool all_gcc_trees(const ColoredDigraph& t, const MultiPartition& pi, const StringAssignment& a) {
  for (int s = 0; s < a.string_count(); ++s)
    if (!is_tree(gcc(t, pi, a, s).graph)) return false;
  return true;
}

void for_each_multipartition_above(const MultiPartition& lower, const Guards& guards,
                                   const std::function<void(const MultiPartition&)>& visit) {
  std::vector<std::vector<Partition>> choices;
  double total = 1;
  for (const auto& p : lower) {
    total *= static_cast<double>(bell_number(p.block_count()));
    if (total > guards.max_partition_tuples)
      throw GuardError("guard-partitions", "partition tuple count exceeds guard " +
                                               std::to_string(static_cast<long long>(guards.max_partition_tuples)));
  }
  for (const auto& p : lower) choices.push_back(enumerate_partitions(p.ground_size(), p));
  MultiPartition current(lower.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == lower.size()) {
      visit(current);
      return;
    }
    for (const auto& p : choices[k]) {
      current[k] = p;
      rec(k + 1);
    }
  };
  rec(0);
}

void for_each_admissible(const ColoredDigraph& t, const StringAssignment& a, const Guards& guards,
                         const std::function<void(const MultiPartition&)>& visit) {
  for_each_multipartition_above(rho_all(t, a), guards, visit);
}

void for_each_multipartition(int n, int strings, const Guards& guards,
                             const std::function<void(const MultiPartition&)>& visit) {
  for_each_multipartition_above(MultiPartition(static_cast<std::size_t>(strings), Partition::singletons(n)), guards,
                                visit);
}

}  // namespace trafficlab
