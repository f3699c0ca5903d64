#include "trafficlab/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace trafficlab {

DiGraph::DiGraph(int n, std::vector<std::pair<int, int>> e) : vertex_count(n), edges(std::move(e)) {
  if (n < 0) throw std::invalid_argument("DiGraph: negative vertex count");
  for (auto [s, t] : edges)
    if (s < 0 || s >= n || t < 0 || t >= n) throw std::invalid_argument("DiGraph: edge endpoint out of range");
}

DiGraph quotient(const DiGraph& g, const Partition& p) {
  if (p.ground_size() != g.vertex_count) throw std::invalid_argument("quotient: partition size mismatch");
  DiGraph q;
  q.vertex_count = p.block_count();
  q.edges.reserve(g.edges.size());
  for (auto [s, t] : g.edges) q.edges.emplace_back(p.block_of(s), p.block_of(t));
  return q;
}

DiGraph edge_subgraph(const DiGraph& g, const std::vector<int>& edge_ids) {
  DiGraph h;
  h.vertex_count = g.vertex_count;
  for (int e : edge_ids) h.edges.push_back(g.edges.at(static_cast<std::size_t>(e)));
  return h;
}

namespace {

std::vector<int> union_find_labels(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = find(v);
  return labels;
}

}  // namespace

Partition weak_components(const DiGraph& g) {
  return Partition::from_labels(union_find_labels(g.vertex_count, g.edges));
}

Partition components(const UGraph& g) { return Partition::from_labels(union_find_labels(g.vertex_count, g.edges)); }

std::vector<int> bridges(const DiGraph& g) {
  const int n = g.vertex_count;
  // adjacency: (neighbor, edge id)
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [s, t] = g.edges[static_cast<std::size_t>(e)];
    if (s == t) continue;
    adj[static_cast<std::size_t>(s)].emplace_back(t, e);
    adj[static_cast<std::size_t>(t)].emplace_back(s, e);
  }
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<int> out;
  int clock = 0;
  // Iterative DFS; skipping only the parent *edge id* keeps parallel edges out.
  struct Frame {
    int v, parent_edge;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = clock++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto& nbrs = adj[static_cast<std::size_t>(f.v)];
      if (f.next < nbrs.size()) {
        auto [w, e] = nbrs[f.next++];
        if (e == f.parent_edge) continue;
        if (disc[static_cast<std::size_t>(w)] == -1) {
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = clock++;
          stack.push_back({w, e, 0});
        } else {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(done.v)]);
          if (low[static_cast<std::size_t>(done.v)] > disc[static_cast<std::size_t>(p)]) out.push_back(done.parent_edge);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int forest_leaf_count(const UGraph& forest) {
  std::vector<int> degree(static_cast<std::size_t>(forest.vertex_count), 0);
  for (auto [a, b] : forest.edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  int leaves = 0;
  for (int d : degree) leaves += d == 0 ? 2 : (d == 1 ? 1 : 0);
  return leaves;
}

TwoEdgeDecomposition two_edge_decompose(const DiGraph& g) {
  TwoEdgeDecomposition out;
  out.cut_edges = bridges(g);
  std::vector<std::pair<int, int>> kept;
  std::size_t k = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (k < out.cut_edges.size() && out.cut_edges[k] == e) {
      ++k;
      continue;
    }
    kept.push_back(g.edges[static_cast<std::size_t>(e)]);
  }
  Partition comps = Partition::from_labels(union_find_labels(g.vertex_count, kept));
  out.component_of_vertex = comps.labels();
  out.component_count = comps.block_count();
  out.forest.vertex_count = comps.block_count();
  for (int e : out.cut_edges)
    out.forest.edges.emplace_back(comps.block_of(g.source(e)), comps.block_of(g.target(e)));
  out.leaf_count = forest_leaf_count(out.forest);
  return out;
}

bool is_two_edge_connected(const DiGraph& g) {
  return weak_components(g).block_count() <= 1 && bridges(g).empty();
}

bool is_tree(const UGraph& g) {
  return g.vertex_count >= 1 && g.edge_count() == g.vertex_count - 1 && components(g).block_count() == 1;
}

}  // namespace trafficlab
