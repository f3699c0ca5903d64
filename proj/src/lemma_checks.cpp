#include "trafficlab/lemma_checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace trafficlab {

namespace {

// ---------------------------------------------------------------------------
// Multigraphs as symmetric count matrices.

struct Counts {
  int n = 0;
  std::vector<int> cnt;  // n*n

  int at(int a, int b) const { return cnt[static_cast<std::size_t>(a * n + b)]; }
  void add(int a, int b) {
    ++cnt[static_cast<std::size_t>(a * n + b)];
    ++cnt[static_cast<std::size_t>(b * n + a)];
  }
  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < n; ++u) d += at(v, u);
    return d;
  }
};

Counts counts_of(const UGraph& g) {
  Counts c{g.vertex_count, std::vector<int>(static_cast<std::size_t>(g.vertex_count * g.vertex_count), 0)};
  for (auto [a, b] : g.edges) c.add(a, b);
  return c;
}

UGraph ugraph_of(const Counts& c) {
  UGraph g;
  g.vertex_count = c.n;
  for (int a = 0; a < c.n; ++a)
    for (int b = a + 1; b < c.n; ++b)
      for (int k = 0; k < c.at(a, b); ++k) g.edges.emplace_back(a, b);
  return g;
}

// Isomorphism-invariant vertex key: degree, then neighbor degrees with multiplicity.
std::vector<std::vector<int>> vertex_keys(const Counts& c) {
  std::vector<int> deg(static_cast<std::size_t>(c.n));
  for (int v = 0; v < c.n; ++v) deg[static_cast<std::size_t>(v)] = c.degree(v);
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(c.n));
  for (int v = 0; v < c.n; ++v) {
    auto& k = keys[static_cast<std::size_t>(v)];
    for (int u = 0; u < c.n; ++u)
      for (int m = 0; m < c.at(v, u); ++m) k.push_back(deg[static_cast<std::size_t>(u)]);
    std::sort(k.rbegin(), k.rend());
    k.insert(k.begin(), deg[static_cast<std::size_t>(v)]);
  }
  return keys;
}

// Visits every bijection that only permutes vertices inside equal-key classes,
// as `order`: order[position] = vertex, positions sorted by decreasing key.
void for_each_key_ordering(const Counts& c, const std::function<void(const std::vector<int>&)>& visit) {
  auto keys = vertex_keys(c);
  std::vector<int> verts(static_cast<std::size_t>(c.n));
  std::iota(verts.begin(), verts.end(), 0);
  std::stable_sort(verts.begin(), verts.end(),
                   [&](int a, int b) { return keys[static_cast<std::size_t>(a)] > keys[static_cast<std::size_t>(b)]; });
  std::vector<std::pair<int, int>> classes;  // [begin, end) in verts
  for (int i = 0; i < c.n;) {
    int j = i;
    while (j < c.n && keys[static_cast<std::size_t>(verts[static_cast<std::size_t>(j)])] ==
                          keys[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])])
      ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::vector<int> order = verts;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == classes.size()) {
      visit(order);
      return;
    }
    auto [b, e] = classes[k];
    std::sort(order.begin() + b, order.begin() + e);
    do rec(k + 1);
    while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(0);
}

std::string code_under(const Counts& c, const std::vector<int>& order) {
  std::string s;
  for (int i = 0; i < c.n; ++i)
    for (int j = i + 1; j < c.n; ++j)
      s.push_back(static_cast<char>(c.at(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)])));
  return s;
}

std::string canonical_code(const Counts& c) {
  std::string best;
  bool first = true;
  for_each_key_ordering(c, [&](const std::vector<int>& order) {
    std::string s = code_under(c, order);
    if (first || s < best) best = std::move(s);
    first = false;
  });
  return best;
}

Counts from_code(int n, const std::string& code) {
  Counts c{n, std::vector<int>(static_cast<std::size_t>(n * n), 0)};
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      for (int m = 0; m < code[k]; ++m) c.add(i, j);
  return c;
}

int component_count(const Counts& c) {
  std::vector<int> parent(static_cast<std::size_t>(c.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return parent[static_cast<std::size_t>(v)] == v ? v : parent[static_cast<std::size_t>(v)] = find(parent[static_cast<std::size_t>(v)]);
  };
  int comps = c.n;
  for (int a = 0; a < c.n; ++a)
    for (int b = a + 1; b < c.n; ++b)
      if (c.at(a, b) && find(a) != find(b)) {
        parent[static_cast<std::size_t>(find(a))] = find(b);
        --comps;
      }
  return comps;
}

// Vertex permutations p (p[v] = image) with cnt[p(a)][p(b)] = cnt[a][b].
std::vector<std::vector<int>> automorphisms(const Counts& c) {
  std::vector<std::vector<int>> out;
  std::vector<int> base;
  bool have_base = false;
  std::vector<std::vector<int>> orders;
  for_each_key_ordering(c, [&](const std::vector<int>& order) { orders.push_back(order); });
  // Every key ordering composed with the inverse of the first one is a
  // key-preserving permutation; keep those preserving the counts.
  for (const auto& order : orders) {
    if (!have_base) {
      base = order;
      have_base = true;
    }
    std::vector<int> p(static_cast<std::size_t>(c.n));
    for (int i = 0; i < c.n; ++i) p[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])] = order[static_cast<std::size_t>(i)];
    bool ok = true;
    for (int a = 0; a < c.n && ok; ++a)
      for (int b = a + 1; b < c.n && ok; ++b)
        ok = c.at(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]) == c.at(a, b);
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partitions of a small ground set, by index.

class PartitionTable {
 public:
  explicit PartitionTable(int n) : n_(n), parts_(enumerate_partitions(n)) {
    if (parts_.size() > 5000) throw std::invalid_argument("partition table: ground set too large");
    for (std::size_t i = 0; i < parts_.size(); ++i) index_.emplace(parts_[i], static_cast<int>(i));
    meets_.assign(parts_.size() * parts_.size(), -1);
  }
  int size() const { return static_cast<int>(parts_.size()); }
  const Partition& at(int i) const { return parts_[static_cast<std::size_t>(i)]; }
  int index(const Partition& p) const { return index_.at(p); }
  int meet_of(int a, int b) {
    int& slot = meets_[static_cast<std::size_t>(a) * parts_.size() + static_cast<std::size_t>(b)];
    if (slot < 0) slot = index(meet(at(a), at(b)));
    return slot;
  }
  std::vector<int> coarsenings(const Partition& lower) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (lower.refines(parts_[i])) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  int n_;
  std::vector<Partition> parts_;
  std::unordered_map<Partition, int, PartitionHash> index_;
  std::vector<int> meets_;
};

std::shared_ptr<PartitionTable> table_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<PartitionTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<PartitionTable>(n);
  return slot;
}

// T_{π,c} data for one ω.
struct ColorTerm {
  int vertices = 0;
  int components = 0;
  int leaf_count = 0;
  std::vector<int> component_of_block;
  std::vector<int> representative;  // an element of each ω block
};

std::string describe_graph(const ColoredDigraph& t, const StringAssignment& a) {
  std::ostringstream os;
  os << "V=" << t.vertex_count() << " E=[";
  for (int e = 0; e < t.edge_count(); ++e)
    os << (e ? " " : "") << t.graph.source(e) << "-" << t.graph.target(e) << ":"
       << a.colors()[static_cast<std::size_t>(t.edge_color[static_cast<std::size_t>(e)])];
  os << "]";
  return os.str();
}

std::string describe_pi(const MultiPartition& pi) {
  std::ostringstream os;
  for (std::size_t s = 0; s < pi.size(); ++s) os << (s ? " " : "") << pi[s];
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<UGraph> two_edge_connected_multigraphs(int max_vertices, int max_edges) {
  if (max_vertices < 1 || max_edges < 0) throw std::invalid_argument("multigraph enumeration: bad bounds");
  std::vector<UGraph> out;
  for (int n = 1; n <= max_vertices; ++n) {
    std::set<std::string> level{std::string(static_cast<std::size_t>(n * (n - 1) / 2), '\0')};
    for (int m = 0;; ++m) {
      for (const auto& code : level) {
        Counts c = from_code(n, code);
        UGraph g = ugraph_of(c);
        DiGraph d(g.vertex_count, g.edges);
        if (is_two_edge_connected(d)) out.push_back(std::move(g));
      }
      if (m == max_edges) break;
      std::set<std::string> next;
      const int remaining = max_edges - (m + 1);
      for (const auto& code : level) {
        Counts c = from_code(n, code);
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) {
            Counts d = c;
            d.add(a, b);
            // Each later edge fixes at most two degree deficits and joins at
            // most two components.
            int deficit = 0;
            for (int v = 0; v < n; ++v) deficit += std::max(0, 2 - d.degree(v));
            if (n > 1 && deficit > 2 * remaining) continue;
            if (component_count(d) - 1 > remaining) continue;
            next.insert(canonical_code(d));
          }
      }
      level = std::move(next);
      if (level.empty()) break;
    }
  }
  return out;
}

std::vector<std::vector<int>> edge_colorings(const UGraph& g, int colors) {
  if (colors < 1) throw std::invalid_argument("edge_colorings: need at least one color");
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (a >= b || (e > 0 && g.edges[e - 1] > g.edges[e]))
      throw std::invalid_argument("edge_colorings: edges must be sorted pairs a<b");
  }
  const Counts c = counts_of(g);
  const auto autos = automorphisms(c);
  std::vector<std::pair<int, int>> pairs;  // distinct pairs in order
  std::vector<int> first_edge, multiplicity;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (pairs.empty() || pairs.back() != g.edges[e]) {
      pairs.push_back(g.edges[e]);
      first_edge.push_back(static_cast<int>(e));
      multiplicity.push_back(0);
    }
    ++multiplicity.back();
  }
  std::map<std::pair<int, int>, std::size_t> pair_index;
  for (std::size_t i = 0; i < pairs.size(); ++i) pair_index[pairs[i]] = i;

  std::vector<std::vector<int>> out;
  std::vector<int> coloring(g.edges.size());
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t p, std::size_t slot) {
    if (p == pairs.size()) {
      // Keep the orbit representative: minimal under every automorphism.
      for (const auto& aut : autos) {
        std::vector<int> image(g.edges.size());
        for (std::size_t q = 0; q < pairs.size(); ++q) {
          int x = aut[static_cast<std::size_t>(pairs[q].first)], y = aut[static_cast<std::size_t>(pairs[q].second)];
          std::size_t r = pair_index.at({std::min(x, y), std::max(x, y)});
          std::copy_n(coloring.begin() + first_edge[q], multiplicity[q], image.begin() + first_edge[r]);
        }
        for (std::size_t r = 0; r < pairs.size(); ++r)
          std::sort(image.begin() + first_edge[r], image.begin() + first_edge[r] + multiplicity[r]);
        if (image < coloring) return;
      }
      out.push_back(coloring);
      return;
    }
    if (slot == static_cast<std::size_t>(multiplicity[p])) {
      rec(p + 1, 0);
      return;
    }
    const std::size_t e = static_cast<std::size_t>(first_edge[p]) + slot;
    for (int col = slot ? coloring[e - 1] : 0; col < colors; ++col) {
      coloring[e] = col;
      rec(p, slot + 1);
    }
  };
  rec(0, 0);
  return out;
}

ColoredDigraph orient(const UGraph& g, const std::vector<int>& coloring) {
  if (coloring.size() != g.edges.size()) throw std::invalid_argument("orient: one color per edge required");
  ColoredDigraph t;
  t.graph = DiGraph(g.vertex_count, g.edges);
  t.edge_color = coloring;
  return t;
}

ExponentGraphResult check_exponent_bound_direct(const ColoredDigraph& t, const StringAssignment& a,
                                                const Guards& guards) {
  ExponentGraphResult res;
  res.used_full_enumeration = true;
  for_each_admissible(t, a, guards, [&](const MultiPartition& pi) {
    ++res.configurations;
    ExponentReport r = growth_exponent(t, pi, a);
    bool trees = true;
    std::vector<GccGraph> gccs;
    for (int s = 0; s < a.string_count(); ++s) {
      gccs.push_back(gcc(t, pi, a, s));
      trees = trees && is_tree(gccs.back().graph);
    }
    auto fail = [&](const std::string& why) {
      res.violations.push_back(why + ": " + describe_graph(t, a) + " pi=" + describe_pi(pi));
    };
    if (r.total > 0) fail("exponent-positive");
    if ((r.total == 0) != trees) fail("equality-vs-tree");
    if (r.total == 0)
      for (int c = 0; c < a.color_count(); ++c) {
        ColorQuotient q = t_pi_c(t, pi, a, c);
        if (q.leaf_count != 2 * q.component_count()) fail("leaves-vs-components");
      }
    for (int s = 0; s < a.string_count(); ++s) {
      if (!is_tree(gccs[static_cast<std::size_t>(s)].graph)) continue;
      for (const auto& q : gccs[static_cast<std::size_t>(s)].quotients) {
        auto h = h_sc(pi, a, s, q.color);
        std::set<std::pair<int, int>> seen;
        for (int b = 0; b < q.vertex_count(); ++b)
          if (!seen.insert({q.components.block_of(b), h[static_cast<std::size_t>(b)]}).second)
            fail("block-map-not-injective");
      }
    }
  });
  return res;
}

ExponentGraphResult check_exponent_bound(const ColoredDigraph& t, const StringAssignment& a, const Guards& guards) {
  const int n = t.vertex_count();
  auto table = table_for(n);
  PartitionTable& tab = *table;

  std::vector<std::vector<int>> choices;
  double total = 1;
  for (int s = 0; s < a.string_count(); ++s) {
    choices.push_back(tab.coarsenings(rho(t, a, s)));
    total *= static_cast<double>(choices.back().size());
  }
  if (total > guards.max_partition_tuples)
    throw GuardError("guard-partitions", "exponent check exceeds the partition guard");

  // Lazily computed T_{π,c} data per (c, ω index).
  std::vector<std::vector<std::unique_ptr<ColorTerm>>> terms(static_cast<std::size_t>(a.color_count()));
  std::vector<std::vector<int>> color_edges(static_cast<std::size_t>(a.color_count()));
  for (int c = 0; c < a.color_count(); ++c) {
    terms[static_cast<std::size_t>(c)].resize(static_cast<std::size_t>(tab.size()));
    color_edges[static_cast<std::size_t>(c)] = t.edges_where([c](int col) { return col == c; });
  }
  auto term = [&](int c, int w) -> const ColorTerm& {
    auto& slot = terms[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
    if (!slot) {
      const Partition& omega = tab.at(w);
      DiGraph q = quotient(edge_subgraph(t.graph, color_edges[static_cast<std::size_t>(c)]), omega);
      Partition comps = weak_components(q);
      slot = std::make_unique<ColorTerm>();
      slot->vertices = q.vertex_count;
      slot->components = comps.block_count();
      slot->leaf_count = two_edge_decompose(q).leaf_count;
      slot->component_of_block = comps.labels();
      slot->representative.assign(static_cast<std::size_t>(q.vertex_count), -1);
      for (int v = n - 1; v >= 0; --v) slot->representative[static_cast<std::size_t>(omega.block_of(v))] = v;
    }
    return *slot;
  };

  ExponentGraphResult res;
  bool needs_direct = false;
  std::vector<int> parent;
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };

  for (int s = 0; s < a.string_count() && !needs_direct; ++s) {
    const auto& cs = a.colors_of(s);
    std::vector<int> others;
    for (int c : cs)
      for (int r : a.strings_of(c))
        if (r != s) others.push_back(r);
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());

    for (int ps : choices[static_cast<std::size_t>(s)]) {
      // Reachable tuples (ω_c)_{c ∈ C_s}, one other string at a time.
      std::vector<std::vector<int>> states{std::vector<int>(cs.size(), ps)};
      for (int r : others) {
        std::vector<std::vector<int>> next;
        for (const auto& st : states)
          for (int pr : choices[static_cast<std::size_t>(r)]) {
            std::vector<int> ns = st;
            for (std::size_t i = 0; i < cs.size(); ++i)
              if (a.incident(r, cs[i])) ns[i] = tab.meet_of(ns[i], pr);
            next.push_back(std::move(ns));
          }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        states = std::move(next);
      }
      const Partition& pis = tab.at(ps);
      for (const auto& st : states) {
        ++res.configurations;
        int twice_exponent = 2 * (pis.block_count() - 1);
        int gcc_vertices = pis.block_count(), gcc_edges = 0;
        bool leaves_match = true;
        for (std::size_t i = 0; i < cs.size(); ++i) {
          const ColorTerm& ct = term(cs[i], st[i]);
          twice_exponent += ct.leaf_count - 2 * ct.vertices;
          gcc_vertices += ct.components;
          gcc_edges += ct.vertices;
          leaves_match = leaves_match && ct.leaf_count == 2 * ct.components;
        }
        bool tree = gcc_edges == gcc_vertices - 1;
        bool injective = true;
        if (tree) {
          parent.resize(static_cast<std::size_t>(gcc_vertices));
          std::iota(parent.begin(), parent.end(), 0);
          int offset = pis.block_count(), joined = 0;
          for (std::size_t i = 0; i < cs.size(); ++i) {
            const ColorTerm& ct = term(cs[i], st[i]);
            std::set<std::pair<int, int>> seen;
            for (int b = 0; b < ct.vertices; ++b) {
              const int left = pis.block_of(ct.representative[static_cast<std::size_t>(b)]);
              const int comp = ct.component_of_block[static_cast<std::size_t>(b)];
              injective = injective && seen.insert({comp, left}).second;
              int x = find(left), y = find(offset + comp);
              if (x != y) {
                parent[static_cast<std::size_t>(x)] = y;
                ++joined;
              }
            }
            offset += ct.components;
          }
          tree = joined == gcc_vertices - 1;
        }
        if (tree && !injective)
          res.violations.push_back("block-map-not-injective: " + describe_graph(t, a) + " string=" +
                                   a.strings()[static_cast<std::size_t>(s)] + " pi_s=" + pis.to_string());
        const bool ok = (twice_exponent < 0 && !tree) || (twice_exponent == 0 && tree && leaves_match);
        if (!ok) {
          // The per-string statement failed; decide the graph over all π.
          needs_direct = true;
          break;
        }
      }
      if (needs_direct) break;
    }
  }
  if (needs_direct) {
    ExponentGraphResult direct = check_exponent_bound_direct(t, a, guards);
    direct.configurations += res.configurations;
    for (auto& v : res.violations) direct.violations.push_back(std::move(v));
    return direct;
  }
  return res;
}

ExponentSweepReport exponent_bound_sweep(const StringAssignment& a, int max_vertices, int max_edges,
                                         const Guards& guards, std::size_t max_examples) {
  ExponentSweepReport rep;
  for (const auto& g : two_edge_connected_multigraphs(max_vertices, max_edges)) {
    ++rep.graphs;
    for (const auto& coloring : edge_colorings(g, a.color_count())) {
      ++rep.colored_graphs;
      ExponentGraphResult r = check_exponent_bound(orient(g, coloring), a, guards);
      rep.configurations += r.configurations;
      rep.full_enumerations += r.used_full_enumeration;
      rep.violations += static_cast<std::int64_t>(r.violations.size());
      for (auto& v : r.violations)
        if (rep.examples.size() < max_examples) rep.examples.push_back(std::move(v));
    }
  }
  return rep;
}

}  // namespace trafficlab
