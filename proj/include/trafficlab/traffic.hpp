#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "trafficlab/colored_digraph.hpp"
#include "trafficlab/permutation.hpp"
#include "trafficlab/structured_matrix.hpp"

namespace trafficlab {

/// Edge-labeled digraph. Edge e contributes (X_e)_{i(e+), i(e-)}: row from the
/// target, column from the source. With vertex labels it is the looped graph,
/// each vertex contributing (Λ_v)_{i(v), i(v)}.
template <typename Scalar>
struct TestGraph {
  DiGraph graph;
  std::vector<int> edge_color;  // may be empty for uncolored use
  std::vector<Matrix<Scalar>> edge_label;
  std::vector<Vector<Scalar>> vertex_label;  // empty unless looped

  int vertex_count() const { return graph.vertex_count; }
  int edge_count() const { return graph.edge_count(); }
  bool looped() const { return !vertex_label.empty(); }
  ColoredDigraph skeleton() const {
    ColoredDigraph s{graph, edge_color};
    if (s.edge_color.empty()) s.edge_color.assign(static_cast<std::size_t>(edge_count()), 0);
    return s;
  }
};

namespace detail {

template <typename Scalar>
struct Factor {
  std::vector<int> scope;  // ascending vertex ids
  std::vector<Scalar> values;
};

inline Index label_dimension_checked(Index d, Index expect, const char* what) {
  if (expect >= 0 && d != expect) throw std::invalid_argument(std::string(what) + ": label dimensions differ");
  return d;
}

template <typename Scalar>
Index common_dimension(const TestGraph<Scalar>& t) {
  Index d = -1;
  for (const auto& x : t.edge_label) {
    if (x.rows() != x.cols()) throw std::invalid_argument("test graph: edge label is not square");
    d = label_dimension_checked(x.rows(), d, "test graph");
  }
  for (const auto& l : t.vertex_label) d = label_dimension_checked(l.size(), d, "test graph");
  if (static_cast<int>(t.edge_label.size()) != t.edge_count())
    throw std::invalid_argument("test graph: one label per edge required");
  if (t.looped() && static_cast<int>(t.vertex_label.size()) != t.vertex_count())
    throw std::invalid_argument("test graph: one loop label per vertex required");
  return d;
}

inline double pow_double(Index base, int exp) {
  double r = 1;
  for (int k = 0; k < exp; ++k) r *= static_cast<double>(base);
  return r;
}

}  // namespace detail

/// Σ over all i: V → [d] of the entry product (no normalization). `d` is the
/// label dimension; it must be given when the graph has no labels at all.
template <typename Scalar>
Scalar raw_trace(const TestGraph<Scalar>& t, const Guards& guards = {}, Index d_hint = -1) {
  Index d = detail::common_dimension(t);
  if (d < 0) d = d_hint;
  if (d < 0) throw std::invalid_argument("raw_trace: unknown label dimension");
  using F = detail::Factor<Scalar>;
  std::vector<F> factors;
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& x = t.edge_label[static_cast<std::size_t>(e)];
    int s = t.graph.source(e), g = t.graph.target(e);
    F f;
    if (s == g) {
      f.scope = {s};
      for (Index i = 0; i < d; ++i) f.values.push_back(x(i, i));
    } else {
      f.scope = {std::min(s, g), std::max(s, g)};
      f.values.resize(static_cast<std::size_t>(d * d));
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
          // a is the value at the smaller vertex id.
          Index at_s = s < g ? a : b, at_g = s < g ? b : a;
          f.values[static_cast<std::size_t>(a * d + b)] = x(at_g, at_s);
        }
    }
    factors.push_back(std::move(f));
  }
  for (int v = 0; v < t.vertex_count() && t.looped(); ++v) {
    F f;
    f.scope = {v};
    const auto& l = t.vertex_label[static_cast<std::size_t>(v)];
    for (Index i = 0; i < d; ++i) f.values.push_back(l(i));
    factors.push_back(std::move(f));
  }

  Scalar result(1);
  std::vector<char> done(static_cast<std::size_t>(t.vertex_count()), 0);
  for (int round = 0; round < t.vertex_count(); ++round) {
    // Min-width vertex.
    int best = -1;
    std::size_t best_width = 0;
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (done[static_cast<std::size_t>(v)]) continue;
      std::vector<int> u;
      for (const auto& f : factors)
        if (std::binary_search(f.scope.begin(), f.scope.end(), v)) u.insert(u.end(), f.scope.begin(), f.scope.end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (best == -1 || u.size() < best_width) {
        best = v;
        best_width = u.size();
      }
    }
    const int v = best;
    done[static_cast<std::size_t>(v)] = 1;
    std::vector<F> touching, rest;
    for (auto& f : factors)
      (std::binary_search(f.scope.begin(), f.scope.end(), v) ? touching : rest).push_back(std::move(f));
    if (touching.empty()) {
      result *= Scalar(d);
      factors = std::move(rest);
      continue;
    }
    std::vector<int> u;
    for (const auto& f : touching) u.insert(u.end(), f.scope.begin(), f.scope.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (detail::pow_double(d, static_cast<int>(u.size())) > guards.max_maps)
      throw GuardError("guard-maps", "variable elimination table exceeds map guard");
    const int width = static_cast<int>(u.size());
    // Strides of each union position inside each touching factor.
    std::vector<std::vector<Index>> strides(touching.size(), std::vector<Index>(static_cast<std::size_t>(width), 0));
    for (std::size_t k = 0; k < touching.size(); ++k) {
      const auto& sc = touching[k].scope;
      Index stride = 1;
      for (int p = static_cast<int>(sc.size()) - 1; p >= 0; --p) {
        auto pos = std::lower_bound(u.begin(), u.end(), sc[static_cast<std::size_t>(p)]) - u.begin();
        strides[k][static_cast<std::size_t>(pos)] = stride;
        stride *= d;
      }
    }
    const int vpos = static_cast<int>(std::lower_bound(u.begin(), u.end(), v) - u.begin());
    F out;
    for (int x : u)
      if (x != v) out.scope.push_back(x);
    Index out_size = 1;
    for (std::size_t k = 0; k < out.scope.size(); ++k) out_size *= d;
    out.values.assign(static_cast<std::size_t>(out_size), Scalar(0));
    std::vector<Index> digit(static_cast<std::size_t>(width), 0);
    Index total = out_size * d;
    for (Index idx = 0; idx < total; ++idx) {
      Scalar prod(1);
      for (std::size_t k = 0; k < touching.size(); ++k) {
        Index off = 0;
        for (int p = 0; p < width; ++p) off += digit[static_cast<std::size_t>(p)] * strides[k][static_cast<std::size_t>(p)];
        prod *= touching[k].values[static_cast<std::size_t>(off)];
      }
      Index oidx = 0;
      for (int p = 0; p < width; ++p)
        if (p != vpos) oidx = oidx * d + digit[static_cast<std::size_t>(p)];
      out.values[static_cast<std::size_t>(oidx)] += prod;
      for (int p = width - 1; p >= 0; --p) {
        if (++digit[static_cast<std::size_t>(p)] < d) break;
        digit[static_cast<std::size_t>(p)] = 0;
      }
    }
    factors = std::move(rest);
    if (out.scope.empty())
      result *= out.values[0];
    else
      factors.push_back(std::move(out));
  }
  for (const auto& f : factors) result *= f.values.at(0);
  return result;
}

/// Quotient of a test graph: labels kept per edge, loop labels multiplied
/// entrywise over each block.
template <typename Scalar>
TestGraph<Scalar> quotient_test_graph(const TestGraph<Scalar>& t, const Partition& p) {
  TestGraph<Scalar> q;
  q.graph = quotient(t.graph, p);
  q.edge_color = t.edge_color;
  q.edge_label = t.edge_label;
  if (t.looped()) {
    q.vertex_label.assign(static_cast<std::size_t>(p.block_count()), Vector<Scalar>());
    for (int v = 0; v < t.vertex_count(); ++v) {
      auto& slot = q.vertex_label[static_cast<std::size_t>(p.block_of(v))];
      const auto& l = t.vertex_label[static_cast<std::size_t>(v)];
      if (slot.size() == 0)
        slot = l;
      else
        slot = slot.cwiseProduct(l);
    }
  }
  return q;
}

/// Product of (-1)^{|B|-1} (|B|-1)! over blocks: the Möbius function from the
/// finest partition.
inline long long mobius_from_bottom(const Partition& p) {
  long long m = 1;
  for (const auto& b : p.blocks()) {
    long long f = 1;
    for (std::size_t k = 1; k < b.size(); ++k) f *= static_cast<long long>(k);
    m *= (b.size() % 2 == 1 ? 1 : -1) * f;
  }
  return m;
}

/// Σ over injective i: V → [d] of the entry product (no normalization).
template <typename Scalar>
Scalar raw_injective_trace(const TestGraph<Scalar>& t, const Guards& guards = {}, Index d_hint = -1) {
  Index d = detail::common_dimension(t);
  if (d < 0) d = d_hint;
  if (d < 0) throw std::invalid_argument("raw_injective_trace: unknown label dimension");
  const int n = t.vertex_count();
  if (n > d) return Scalar(0);
  double maps = 1;
  for (int k = 0; k < n; ++k) maps *= static_cast<double>(d - k);
  if (maps > guards.max_maps) {
    // Möbius inversion over quotients, each traced by elimination.
    if (static_cast<double>(bell_number(n)) > guards.max_partition_tuples)
      throw GuardError("guard-partitions", "injective trace needs too many quotients");
    Scalar sum(0);
    for_each_partition(n, [&](const Partition& p) {
      sum += Scalar(mobius_from_bottom(p)) * raw_trace(quotient_test_graph(t, p), guards, d);
    });
    return sum;
  }
  // Backtracking in BFS order; each edge is evaluated once both ends are set.
  std::vector<int> order;
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [a, b] : t.graph.edges) {
      adj[static_cast<std::size_t>(a)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (int r = 0; r < n; ++r) {
      if (seen[static_cast<std::size_t>(r)]) continue;
      seen[static_cast<std::size_t>(r)] = 1;
      std::size_t head = order.size();
      order.push_back(r);
      while (head < order.size()) {
        int v = order[head++];
        for (int w : adj[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            order.push_back(w);
          }
      }
    }
  }
  std::vector<int> depth_of(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) depth_of[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
  std::vector<std::vector<int>> edges_at(static_cast<std::size_t>(n));
  for (int e = 0; e < t.edge_count(); ++e)
    edges_at[static_cast<std::size_t>(std::max(depth_of[static_cast<std::size_t>(t.graph.source(e))],
                                               depth_of[static_cast<std::size_t>(t.graph.target(e))]))]
        .push_back(e);
  std::vector<Index> value(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(d), 0);
  Scalar total(0);
  std::function<void(int, Scalar)> rec = [&](int k, Scalar acc) {
    if (k == n) {
      total += acc;
      return;
    }
    const int v = order[static_cast<std::size_t>(k)];
    for (Index x = 0; x < d; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      value[static_cast<std::size_t>(v)] = x;
      Scalar a = acc;
      if (t.looped()) a *= t.vertex_label[static_cast<std::size_t>(v)](x);
      for (int e : edges_at[static_cast<std::size_t>(k)]) {
        if (a == Scalar(0)) break;
        a *= t.edge_label[static_cast<std::size_t>(e)](value[static_cast<std::size_t>(t.graph.target(e))],
                                                       value[static_cast<std::size_t>(t.graph.source(e))]);
      }
      if (a == Scalar(0)) continue;
      used[static_cast<std::size_t>(x)] = 1;
      rec(k + 1, a);
      used[static_cast<std::size_t>(x)] = 0;
    }
  };
  rec(0, Scalar(1));
  return total;
}

/// τ_d(T) = raw / d^{#Comp(T)}.
template <typename Scalar>
FieldOf<Scalar> trace(const TestGraph<Scalar>& t, const Guards& guards = {}, Index d_hint = -1) {
  Index d = detail::common_dimension(t);
  if (d < 0) d = d_hint;
  using T = ScalarTraits<Scalar>;
  return T::divide(T::lift(raw_trace(t, guards, d)), ipow(d, weak_components(t.graph).block_count()));
}

template <typename Scalar>
FieldOf<Scalar> injective_trace(const TestGraph<Scalar>& t, const Guards& guards = {}, Index d_hint = -1) {
  Index d = detail::common_dimension(t);
  if (d < 0) d = d_hint;
  using T = ScalarTraits<Scalar>;
  return T::divide(T::lift(raw_injective_trace(t, guards, d)), ipow(d, weak_components(t.graph).block_count()));
}

// ---------------------------------------------------------------------------
// The string/color model. Edge labels of color c live on [N]^{S_c}; loop labels
// live on the full space [N]^S.

namespace detail {

template <typename Scalar>
void check_model(const TestGraph<Scalar>& t, const StringAssignment& a, int n) {
  if (static_cast<int>(t.edge_color.size()) != t.edge_count())
    throw std::invalid_argument("model graph: one color per edge required");
  for (int e = 0; e < t.edge_count(); ++e) {
    int c = t.edge_color[static_cast<std::size_t>(e)];
    if (c < 0 || c >= a.color_count()) throw std::invalid_argument("model graph: edge color out of range");
    Index expect = checked_pow(n, static_cast<Index>(a.strings_of(c).size()));
    const auto& x = t.edge_label[static_cast<std::size_t>(e)];
    if (x.rows() != expect || x.cols() != expect)
      throw std::invalid_argument("model graph: edge label is not N^#S_c square");
  }
  if (t.looped()) {
    Index full = checked_pow(n, a.string_count());
    for (const auto& l : t.vertex_label)
      if (l.size() != full) throw std::invalid_argument("model graph: loop label is not N^#S long");
  }
}

/// Visits each i: V → [N]^S with ker(i_s) = π_s, passing the flat full-space
/// index at every vertex.
inline void for_each_kernel_map(const MultiPartition& pi, int n, const Guards& guards,
                                const std::function<void(const std::vector<Index>&)>& visit) {
  const int strings = static_cast<int>(pi.size());
  const int vertices = strings ? pi.front().ground_size() : 0;
  double count = 1;
  for (const auto& p : pi) {
    if (p.block_count() > n) return;
    for (int k = 0; k < p.block_count(); ++k) count *= n - k;
  }
  if (count > guards.max_maps) throw GuardError("guard-maps", "kernel-constrained map count exceeds map guard");
  MultiIndexSpace space(strings, n);
  std::vector<std::vector<int>> value(static_cast<std::size_t>(strings));
  std::vector<Index> point(static_cast<std::size_t>(vertices), 0);
  std::vector<std::vector<char>> used(static_cast<std::size_t>(strings), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int s = 0; s < strings; ++s)
    value[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(pi[static_cast<std::size_t>(s)].block_count()), -1);
  std::function<void(int, int)> rec = [&](int s, int b) {
    if (s == strings) {
      for (int v = 0; v < vertices; ++v) {
        Index flat = 0;
        for (int r = 0; r < strings; ++r)
          flat += space.stride(r) *
                  value[static_cast<std::size_t>(r)][static_cast<std::size_t>(pi[static_cast<std::size_t>(r)].block_of(v))];
        point[static_cast<std::size_t>(v)] = flat;
      }
      visit(point);
      return;
    }
    if (b == pi[static_cast<std::size_t>(s)].block_count()) {
      rec(s + 1, 0);
      return;
    }
    auto& mark = used[static_cast<std::size_t>(s)];
    for (int x = 0; x < n; ++x) {
      if (mark[static_cast<std::size_t>(x)]) continue;
      mark[static_cast<std::size_t>(x)] = 1;
      value[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)] = x;
      rec(s, b + 1);
      mark[static_cast<std::size_t>(x)] = 0;
    }
  };
  rec(0, 0);
}

/// Local index on [N]^{support} of a full-space point.
inline Index restrict_index(const MultiIndexSpace& space, Index point, const std::vector<int>& support) {
  Index l = 0;
  for (int s : support) l = l * space.side() + space.digit(point, s);
  return l;
}

}  // namespace detail

/// Σ_{i : ker(i_s) = π_s} ∏_v (Λ_v)_{i(v), i(v)}; without loop labels this is
/// the number of such maps.
template <typename Scalar>
Scalar raw_lambda(const TestGraph<Scalar>& t, const MultiPartition& pi, int n, const Guards& guards = {}) {
  Scalar sum(0);
  detail::for_each_kernel_map(pi, n, guards, [&](const std::vector<Index>& point) {
    Scalar prod(1);
    for (int v = 0; v < t.vertex_count() && t.looped(); ++v)
      prod *= t.vertex_label[static_cast<std::size_t>(v)](point[static_cast<std::size_t>(v)]);
    sum += prod;
  });
  return sum;
}

/// λ_N(T,π) = raw_lambda / N^{Σ_s #π_s}.
template <typename Scalar>
FieldOf<Scalar> lambda_value(const TestGraph<Scalar>& t, const MultiPartition& pi, int n, const Guards& guards = {}) {
  int blocks = 0;
  for (const auto& p : pi) blocks += p.block_count();
  using T = ScalarTraits<Scalar>;
  return T::divide(T::lift(raw_lambda(t, pi, n, guards)), ipow(n, blocks));
}

namespace detail {

/// Looped entry product of the lifted conjugated labels at one full-space map.
template <typename Scalar>
struct ModelProduct {
  const TestGraph<Scalar>& t;
  const StringAssignment& a;
  const std::vector<Permutation>& sigmas;
  MultiIndexSpace space;
  std::vector<std::vector<int>> off_support;

  ModelProduct(const TestGraph<Scalar>& t_, const StringAssignment& a_, const std::vector<Permutation>& sigmas_, int n)
      : t(t_), a(a_), sigmas(sigmas_), space(a_.string_count(), n) {
    check_model(t, a, n);
    if (static_cast<int>(sigmas.size()) != a.color_count())
      throw std::invalid_argument("model graph: one permutation per color required");
    off_support.resize(static_cast<std::size_t>(a.color_count()));
    for (int c = 0; c < a.color_count(); ++c)
      for (int s = 0; s < a.string_count(); ++s)
        if (!a.incident(s, c)) off_support[static_cast<std::size_t>(c)].push_back(s);
  }

  Scalar operator()(const std::vector<Index>& point) const {
    Scalar prod(1);
    for (int v = 0; v < t.vertex_count() && t.looped(); ++v)
      prod *= t.vertex_label[static_cast<std::size_t>(v)](point[static_cast<std::size_t>(v)]);
    for (int e = 0; e < t.edge_count() && prod != Scalar(0); ++e) {
      const int c = t.edge_color[static_cast<std::size_t>(e)];
      const Index row = point[static_cast<std::size_t>(t.graph.target(e))];
      const Index col = point[static_cast<std::size_t>(t.graph.source(e))];
      for (int s : off_support[static_cast<std::size_t>(c)])
        if (space.digit(row, s) != space.digit(col, s)) return Scalar(0);
      const auto& sc = a.strings_of(c);
      const auto& sigma = sigmas[static_cast<std::size_t>(c)];
      const int r = sigma(static_cast<int>(restrict_index(space, row, sc)));
      const int k = sigma(static_cast<int>(restrict_index(space, col, sc)));
      prod *= t.edge_label[static_cast<std::size_t>(e)](r, k);
    }
    return prod;
  }
};

}  // namespace detail

/// γ_N(T,π) for given color permutations σ_c on [N]^{S_c}: the sum over maps
/// with ker(i_s) = π_s of the looped entry product of the lifted conjugated
/// labels, over N^{#S}.
template <typename Scalar>
FieldOf<Scalar> gamma_empirical(const TestGraph<Scalar>& t, const MultiPartition& pi, const StringAssignment& a,
                                const std::vector<Permutation>& sigmas, int n, const Guards& guards = {}) {
  detail::ModelProduct<Scalar> product(t, a, sigmas, n);
  Scalar sum(0);
  detail::for_each_kernel_map(pi, n, guards, [&](const std::vector<Index>& point) { sum += product(point); });
  using T = ScalarTraits<Scalar>;
  return T::divide(T::lift(sum), ipow(n, a.string_count()));
}

/// The full-space test graph with labels Σ_c* X_e Σ_c ⊗ I.
template <typename Scalar>
TestGraph<Scalar> realize(const TestGraph<Scalar>& t, const StringAssignment& a, const std::vector<Permutation>& sigmas,
                          int n, const Guards& guards = {}) {
  detail::check_model(t, a, n);
  MultiIndexSpace space(a.string_count(), n);
  TestGraph<Scalar> full;
  full.graph = t.graph;
  full.edge_color = t.edge_color;
  full.vertex_label = t.vertex_label;
  for (int e = 0; e < t.edge_count(); ++e) {
    const int c = t.edge_color[static_cast<std::size_t>(e)];
    StructuredMatrix<Scalar> x;
    x.support = a.strings_of(c);
    x.n = n;
    x.entries = conjugate_entries(t.edge_label[static_cast<std::size_t>(e)], sigmas[static_cast<std::size_t>(c)]);
    full.edge_label.push_back(lift(x, space, guards));
  }
  return full;
}

/// τ_{N^{#S}}(T̊) for one draw of the color permutations.
template <typename Scalar>
FieldOf<Scalar> realized_trace(const TestGraph<Scalar>& t, const StringAssignment& a,
                               const std::vector<Permutation>& sigmas, int n, const Guards& guards = {}) {
  return trace(realize(t, a, sigmas, n, guards), guards, checked_pow(n, a.string_count()));
}

/// Model labels with entries uniform in [-2, 2] on [N]^{S_c}, and loop labels
/// of random signs on [N]^S when `looped`.
inline TestGraph<long long> random_integer_test_graph(const ColoredDigraph& skeleton, const StringAssignment& a, int n,
                                                      Rng& rng, bool looped = false) {
  TestGraph<long long> t;
  t.graph = skeleton.graph;
  t.edge_color = skeleton.edge_color;
  for (int e = 0; e < t.edge_count(); ++e) {
    const Index m = checked_pow(n, static_cast<Index>(a.strings_of(t.edge_color[static_cast<std::size_t>(e)]).size()));
    Matrix<long long> x(m, m);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i) x(i, j) = static_cast<long long>(uniform_below(rng, 5)) - 2;
    t.edge_label.push_back(std::move(x));
  }
  if (looped) {
    const Index full = checked_pow(n, a.string_count());
    for (int v = 0; v < t.vertex_count(); ++v) {
      Vector<long long> l(full);
      for (Index i = 0; i < full; ++i) l(i) = uniform_below(rng, 2) ? 1 : -1;
      t.vertex_label.push_back(std::move(l));
    }
  }
  return t;
}

template <typename Scalar>
struct KernelDecomposition {
  FieldOf<Scalar> trace;           // τ(T̊) of the realized graph
  FieldOf<Scalar> admissible_sum;  // Σ over π ≥ ρ of γ_N(T,π)
  std::int64_t admissible_terms = 0;
  std::int64_t kernel_classes = 0;     // kernel tuples met with a nonzero product
  std::int64_t off_admissible = 0;     // of those, tuples with some π_s not ≥ ρ_s
  std::int64_t bucket_mismatches = 0;  // admissible tuples whose bucket sum differs from γ

  bool holds() const { return trace == admissible_sum && off_admissible == 0 && bucket_mismatches == 0; }
};

/// One draw of the kernel decomposition τ(T̊) = Σ_π γ(T,π): the realized trace
/// by elimination, the sum of γ over admissible π, and a pass over every map
/// V → [N]^S bucketed by its kernel tuple to find nonzero γ off π ≥ ρ.
/// T must be connected.
template <typename Scalar>
KernelDecomposition<Scalar> kernel_decomposition(const TestGraph<Scalar>& t, const StringAssignment& a,
                                                 const std::vector<Permutation>& sigmas, int n,
                                                 const Guards& guards = {}) {
  if (weak_components(t.graph).block_count() != 1)
    throw std::invalid_argument("kernel_decomposition: test graph is not connected");
  const int strings = a.string_count(), vertices = t.vertex_count();
  if (detail::pow_double(n, vertices * strings) > guards.max_maps)
    throw GuardError("guard-maps", "N^(#V #S) = " + std::to_string(n) + "^" + std::to_string(vertices * strings) +
                                       " maps exceeds map guard");
  using T = ScalarTraits<Scalar>;
  detail::ModelProduct<Scalar> product(t, a, sigmas, n);
  const ColoredDigraph sk = t.skeleton();
  const MultiPartition lower = rho_all(sk, a);

  KernelDecomposition<Scalar> r;
  r.trace = realized_trace(t, a, sigmas, n, guards);
  r.admissible_sum = T::lift(Scalar(0));
  std::map<std::vector<int>, Scalar> admissible_gamma;
  for_each_admissible(sk, a, guards, [&](const MultiPartition& pi) {
    Scalar raw(0);
    detail::for_each_kernel_map(pi, n, guards, [&](const std::vector<Index>& point) { raw += product(point); });
    r.admissible_sum += T::divide(T::lift(raw), ipow(n, strings));
    ++r.admissible_terms;
    std::vector<int> key;
    for (const auto& p : pi) key.insert(key.end(), p.labels().begin(), p.labels().end());
    admissible_gamma[key] = raw;
  });

  // Odometer over the full-space value of every vertex.
  const Index dim = checked_pow(n, strings);
  std::vector<Index> point(static_cast<std::size_t>(vertices), 0);
  std::map<std::vector<int>, Scalar> buckets;
  std::vector<int> digits(static_cast<std::size_t>(vertices));
  while (true) {
    const Scalar value = product(point);
    if (value != Scalar(0)) {
      std::vector<int> key;
      for (int s = 0; s < strings; ++s) {
        for (int v = 0; v < vertices; ++v)
          digits[static_cast<std::size_t>(v)] = product.space.digit(point[static_cast<std::size_t>(v)], s);
        const Partition p = Partition::from_labels(digits);
        key.insert(key.end(), p.labels().begin(), p.labels().end());
      }
      buckets[key] += value;
    }
    int v = vertices - 1;
    while (v >= 0 && ++point[static_cast<std::size_t>(v)] == dim) point[static_cast<std::size_t>(v--)] = 0;
    if (v < 0) break;
  }
  for (const auto& [key, value] : buckets) {
    if (value == Scalar(0)) continue;
    ++r.kernel_classes;
    bool above = true;
    for (int s = 0; s < strings && above; ++s) {
      auto first = key.begin() + static_cast<std::ptrdiff_t>(s) * vertices;
      const Partition p = Partition::from_labels(std::vector<int>(first, first + vertices));
      above = lower[static_cast<std::size_t>(s)].refines(p);
    }
    if (!above) {
      ++r.off_admissible;
      continue;
    }
    auto it = admissible_gamma.find(key);
    if (it == admissible_gamma.end() || it->second != value) ++r.bucket_mismatches;
  }
  for (const auto& [key, value] : admissible_gamma)
    if (value != Scalar(0) && !buckets.count(key)) ++r.bucket_mismatches;
  return r;
}

/// T_{π,c} with its labels: the c-colored edges over ω_{π,c}, every ω block a
/// vertex, no loop labels.
template <typename Scalar>
TestGraph<Scalar> t_pi_c_labeled(const TestGraph<Scalar>& t, const MultiPartition& pi, const StringAssignment& a,
                                 int c) {
  ColorQuotient q = t_pi_c(t.skeleton(), pi, a, c);
  TestGraph<Scalar> out;
  out.graph = q.graph;
  for (int e : q.edge_ids) {
    out.edge_color.push_back(c);
    out.edge_label.push_back(t.edge_label[static_cast<std::size_t>(e)]);
  }
  return out;
}

/// E γ_N(T,π) in closed form:
///   N^{Σ(#π_s - 1)} λ_N ∏_c (N^{#S_c} - V_c)!/(N^{#S_c})! · N^{#S_c #Comp_c} τ°(T_{π,c})
/// evaluated as raw_λ / N^{#S} · ∏_c raw_inj_c / falling(N^{#S_c}, V_c).
/// Requires T connected and π admissible.
template <typename Scalar>
FieldOf<Scalar> gamma_expected_formula(const TestGraph<Scalar>& t, const MultiPartition& pi, const StringAssignment& a,
                                       int n, const Guards& guards = {}) {
  detail::check_model(t, a, n);
  const ColoredDigraph sk = t.skeleton();
  if (weak_components(t.graph).block_count() != 1)
    throw std::invalid_argument("gamma_expected_formula: test graph is not connected");
  if (!admissible(sk, a, pi)) throw std::invalid_argument("gamma_expected_formula: pi is not admissible");
  using T = ScalarTraits<Scalar>;
  FieldOf<Scalar> value = T::divide(T::lift(raw_lambda(t, pi, n, guards)), ipow(n, a.string_count()));
  for (int c = 0; c < a.color_count(); ++c) {
    const Index m = checked_pow(n, static_cast<Index>(a.strings_of(c).size()));
    TestGraph<Scalar> q = t_pi_c_labeled(t, pi, a, c);
    if (q.vertex_count() > m) return T::lift(Scalar(0));
    Scalar inj = raw_injective_trace(q, guards, m);
    value *= T::divide(T::lift(inj), falling_factorial(m, q.vertex_count()));
  }
  return value;
}

/// E τ_{N^{#S}}(T̊) as the sum of the closed form over admissible π.
template <typename Scalar>
FieldOf<Scalar> expected_trace_exact(const TestGraph<Scalar>& t, const StringAssignment& a, int n,
                                     const Guards& guards = {}) {
  using T = ScalarTraits<Scalar>;
  FieldOf<Scalar> sum = T::lift(Scalar(0));
  for_each_admissible(t.skeleton(), a, guards,
                      [&](const MultiPartition& pi) { sum += gamma_expected_formula(t, pi, a, n, guards); });
  return sum;
}

template <typename Scalar>
struct LeadingTerms {
  FieldOf<Scalar> value;
  std::vector<MultiPartition> terms;
};

/// Σ over admissible π with every GCC(T,π,s) a tree of λ_N(T,π) ∏_c τ°(T_{π,c}).
template <typename Scalar>
LeadingTerms<Scalar> expected_trace_leading_terms(const TestGraph<Scalar>& t, const StringAssignment& a, int n,
                                                  const Guards& guards = {}) {
  detail::check_model(t, a, n);
  using T = ScalarTraits<Scalar>;
  LeadingTerms<Scalar> out{T::lift(Scalar(0)), {}};
  const ColoredDigraph sk = t.skeleton();
  for_each_admissible(sk, a, guards, [&](const MultiPartition& pi) {
    if (!all_gcc_trees(sk, pi, a)) return;
    FieldOf<Scalar> term = lambda_value(t, pi, n, guards);
    for (int c = 0; c < a.color_count(); ++c) {
      const Index m = checked_pow(n, static_cast<Index>(a.strings_of(c).size()));
      term *= injective_trace(t_pi_c_labeled(t, pi, a, c), guards, m);
    }
    out.value += term;
    out.terms.push_back(pi);
  });
  return out;
}

}  // namespace trafficlab
