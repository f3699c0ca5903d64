#include <doctest.h>

#include "oracles.hpp"
#include "traffic_oracles.hpp"
#include "trafficlab/squared_chain.hpp"
#include "trafficlab/traffic.hpp"

using namespace trafficlab;

namespace {

using oracle::brute_raw;
using oracle::brute_realized_trace;
using oracle::for_each_permutation;

TestGraph<long long> random_graph(Rng& rng, int n, int m, Index d, bool looped) {
  TestGraph<long long> t;
  t.graph.vertex_count = n;
  for (int e = 0; e < m; ++e) {
    t.graph.edges.emplace_back(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))),
                               static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))));
    Matrix<long long> x(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) x(i, j) = static_cast<long long>(uniform_below(rng, 5)) - 2;
    t.edge_label.push_back(x);
  }
  if (looped)
    for (int v = 0; v < n; ++v) {
      Vector<long long> l(d);
      for (Index i = 0; i < d; ++i) l(i) = static_cast<long long>(uniform_below(rng, 5)) - 2;
      t.vertex_label.push_back(l);
    }
  return t;
}

struct WorkedExample {
  StringAssignment a{{"1", "2", "3"}, {"B", "G", "R"}, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}}};
  ColoredDigraph t{DiGraph(6, {{0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 0}, {3, 4}, {4, 5}}), {2, 1, 0, 0, 1, 1, 1, 0}};
};

}  // namespace

TEST_CASE("variable elimination and injective traces match brute force") {
  Rng rng = derive_rng(5, {});
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 4));
    const int m = static_cast<int>(uniform_below(rng, 5));
    const Index d = 1 + static_cast<Index>(uniform_below(rng, 3));
    TestGraph<long long> t = random_graph(rng, n, m, d, uniform_below(rng, 2) == 1);
    CHECK(raw_trace(t, {}, d) == brute_raw(t, d, false));
    CHECK(raw_injective_trace(t, {}, d) == brute_raw(t, d, true));
    // Möbius route for the injective trace.
    if (n <= d) {
      Guards ok_guards;
      ok_guards.max_maps = 1e9;
      long long mobius = 0;
      for_each_partition(n, [&](const Partition& p) {
        mobius += mobius_from_bottom(p) * raw_trace(quotient_test_graph(t, p), ok_guards, d);
      });
      CHECK(mobius == brute_raw(t, d, true));
    }
    const int comps = weak_components(t.graph).block_count();
    CHECK(trace(t, {}, d) == Rational(brute_raw(t, d, false)) / Rational(ipow(d, comps)));
  }
}

TEST_CASE("rho is the component partition of the edges avoiding the string") {
  Rng rng = derive_rng(6, {});
  StringAssignment a({"s", "t"}, {"a", "b", "c"}, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 6));
    ColoredDigraph t;
    t.graph.vertex_count = n;
    const int m = static_cast<int>(uniform_below(rng, 7));
    for (int e = 0; e < m; ++e) {
      t.graph.edges.emplace_back(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))),
                                 static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))));
      t.edge_color.push_back(static_cast<int>(uniform_below(rng, 3)));
    }
    for (int s = 0; s < 2; ++s) {
      std::vector<std::pair<int, int>> kept;
      for (int e = 0; e < m; ++e)
        if (!a.incident(s, t.edge_color[static_cast<std::size_t>(e)])) kept.push_back(t.graph.edges[static_cast<std::size_t>(e)]);
      const Partition r = rho(t, a, s);
      CHECK(r.block_count() == oracle::component_count(n, kept));
      for (auto [x, y] : kept) CHECK(r.same_block(x, y));
    }
  }
}

TEST_CASE("worked example: rho, quotients and GCC trees") {
  WorkedExample ex;
  const MultiPartition r = rho_all(ex.t, ex.a);
  CHECK(r[0] == Partition::from_blocks(6, {{0, 1, 2, 3, 4}, {5}}));
  CHECK(r[1] == Partition::from_blocks(6, {{0, 1}, {2}, {3}, {4}, {5}}));
  CHECK(r[2] == Partition::from_blocks(6, {{0}, {1, 2, 3}, {4, 5}}));
  CHECK(admissible(ex.t, ex.a, r));
  const ColorQuotient qb = t_pi_c(ex.t, r, ex.a, 0);
  CHECK(qb.vertex_count() == 5);
  CHECK(qb.edge_ids == std::vector<int>{2, 3, 7});
  const ColorQuotient qr = t_pi_c(ex.t, r, ex.a, 2);
  CHECK(qr.vertex_count() == 3);
  CHECK(qr.edge_ids == std::vector<int>{0});
  CHECK_FALSE(is_tree(gcc(ex.t, r, ex.a, 1).graph));
  CHECK_FALSE(is_tree(gcc(ex.t, r, ex.a, 2).graph));
  const MultiPartition sigma{Partition::from_blocks(6, {{0, 1, 2, 3, 4}, {5}}),
                             Partition::from_blocks(6, {{0, 1, 2, 3}, {4}, {5}}),
                             Partition::from_blocks(6, {{0, 1, 2, 3}, {4, 5}})};
  for (int s = 0; s < 3; ++s) CHECK(is_tree(gcc(ex.t, sigma, ex.a, s).graph));
  CHECK(all_gcc_trees(ex.t, sigma, ex.a));
  CHECK(growth_exponent(ex.t, sigma, ex.a).total == 0);
  CHECK(growth_exponent(ex.t, r, ex.a).total < 0);
  const GccWalk w = induced_gcc_walk(ex.t, r, ex.a, 1, {0, 2, 3, 6, 7});
  CHECK(w.vertices.size() == 9);
  CHECK(w.edges.size() == 8);
}

TEST_CASE("GCC graph sizes follow the definition") {
  WorkedExample ex;
  for_each_admissible(ex.t, ex.a, {}, [&](const MultiPartition& pi) {
    for (int s = 0; s < 3; ++s) {
      const GccGraph g = gcc(ex.t, pi, ex.a, s);
      int right = 0, edges = 0;
      for (int c : ex.a.colors_of(s)) {
        const ColorQuotient q = t_pi_c(ex.t, pi, ex.a, c);
        right += q.component_count();
        edges += omega(pi, ex.a, c).block_count();
      }
      CHECK(g.left_count == pi[static_cast<std::size_t>(s)].block_count());
      CHECK(g.graph.vertex_count == g.left_count + right);
      CHECK(g.graph.edge_count() == edges);
    }
  });
}

TEST_CASE("growth exponent from bridges found by deletion") {
  WorkedExample ex;
  for_each_admissible(ex.t, ex.a, {}, [&](const MultiPartition& pi) {
    Rational e = 0;
    for (const auto& p : pi) e += p.block_count() - 1;
    for (int c = 0; c < 3; ++c) {
      const Partition w = omega(pi, ex.a, c);
      std::vector<std::pair<int, int>> edges;
      for (int k = 0; k < ex.t.edge_count(); ++k)
        if (ex.t.edge_color[static_cast<std::size_t>(k)] == c)
          edges.emplace_back(w.block_of(ex.t.graph.source(k)), w.block_of(ex.t.graph.target(k)));
      const int nv = w.block_count();
      const auto br = oracle::bridges_by_deletion(nv, edges);
      std::vector<std::pair<int, int>> kept;
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (!std::binary_search(br.begin(), br.end(), static_cast<int>(k))) kept.push_back(edges[k]);
      // Two-edge-connected classes are the components once bridges are gone.
      const std::vector<int> cls = oracle::component_roots(nv, kept);
      std::map<int, int> degree;
      for (int v = 0; v < nv; ++v) degree[cls[static_cast<std::size_t>(v)]] += 0;
      for (int b : br) {
        ++degree[cls[static_cast<std::size_t>(edges[static_cast<std::size_t>(b)].first)]];
        ++degree[cls[static_cast<std::size_t>(edges[static_cast<std::size_t>(b)].second)]];
      }
      int leaves = 0;
      for (auto [k, deg] : degree) leaves += deg == 0 ? 2 : deg == 1 ? 1 : 0;
      e += static_cast<int>(ex.a.strings_of(c).size()) * (Rational(leaves, 2) - nv);
    }
    CHECK(growth_exponent(ex.t, pi, ex.a).total == e);
  });
}

TEST_CASE("expected trace formula equals the average over all permutation tuples") {
  Rng rng = derive_rng(7, {});
  // Two colors on one shared string (free) and on two strings (tensor).
  const std::vector<StringAssignment> assignments{
      StringAssignment({"s"}, {"a", "b"}, {{0, 0}, {0, 1}}),
      StringAssignment({"s", "t"}, {"a", "b"}, {{0, 0}, {1, 1}}),
  };
  for (const auto& a : assignments)
    for (int n : {2, 3})
      for (int trial = 0; trial < 4; ++trial) {
        ColoredDigraph sk;
        sk.graph = DiGraph(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}});
        for (int e = 0; e < 4; ++e) sk.edge_color.push_back(static_cast<int>(uniform_below(rng, 2)));
        const TestGraph<long long> t = random_integer_test_graph(sk, a, n, rng, true);
        Rational brute = 0;
        long long tuples = 0;
        for_each_permutation(n, [&](const Permutation& p) {
          for_each_permutation(n, [&](const Permutation& q) {
            brute += brute_realized_trace(t, a, {p, q}, n);
            ++tuples;
          });
        });
        brute /= tuples;
        CHECK(expected_trace_exact(t, a, n) == brute);
        // Per-π: the closed form is the mean of the empirical γ.
        for_each_admissible(sk, a, {}, [&](const MultiPartition& pi) {
          Rational mean = 0;
          for_each_permutation(n, [&](const Permutation& p) {
            for_each_permutation(n, [&](const Permutation& q) { mean += gamma_empirical(t, pi, a, {p, q}, n); });
          });
          CHECK(gamma_expected_formula(t, pi, a, n) == mean / tuples);
        });
      }
}

TEST_CASE("kernel decomposition holds per draw") {
  Rng rng = derive_rng(8, {});
  WorkedExample ex;
  for (int draw = 0; draw < 3; ++draw) {
    const TestGraph<long long> t = random_integer_test_graph(ex.t, ex.a, 2, rng, draw % 2 == 1);
    const auto sigmas = sample_color_permutations(ex.a, 2, rng);
    const KernelDecomposition<long long> r = kernel_decomposition(t, ex.a, sigmas, 2);
    CHECK(r.holds());
    CHECK(r.trace == brute_realized_trace(t, ex.a, sigmas, 2));
    CHECK(r.kernel_classes > 0);
  }
  Guards tight;
  tight.max_maps = 1000;
  const TestGraph<long long> t = random_integer_test_graph(ex.t, ex.a, 2, rng);
  CHECK_THROWS_AS(kernel_decomposition(t, ex.a, sample_color_permutations(ex.a, 2, rng), 2, tight), GuardError);
}

TEST_CASE("realized trace by elimination matches the definition") {
  Rng rng = derive_rng(9, {});
  StringAssignment a({"s", "t"}, {"a", "b"}, {{0, 0}, {0, 1}, {1, 1}});
  ColoredDigraph sk{DiGraph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}}), {0, 1, 0, 1}};
  for (int trial = 0; trial < 5; ++trial) {
    const TestGraph<long long> t = random_integer_test_graph(sk, a, 2, rng, true);
    const auto sigmas = sample_color_permutations(a, 2, rng);
    CHECK(realized_trace(t, a, sigmas, 2) == brute_realized_trace(t, a, sigmas, 2));
  }
}

TEST_CASE("guards stop oversized enumerations") {
  WorkedExample ex;
  Guards tight;
  tight.max_partition_tuples = 10;
  CHECK_THROWS_AS(for_each_admissible(ex.t, ex.a, tight, [](const MultiPartition&) {}), GuardError);
}
