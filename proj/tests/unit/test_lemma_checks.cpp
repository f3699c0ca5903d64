#include <doctest.h>

#include "oracles.hpp"
#include "trafficlab/lemma_checks.hpp"
#include "trafficlab/rng.hpp"

using namespace trafficlab;

namespace {

using Edges = std::vector<std::pair<int, int>>;

// All loopless multigraphs on n vertices with m edges, as sorted edge lists.
void for_each_multigraph(int n, int m, const std::function<void(const Edges&)>& visit) {
  Edges pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  Edges cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == m) {
      visit(cur);
      return;
    }
    for (std::size_t p = from; p < pairs.size(); ++p) {
      cur.push_back(pairs[p]);
      rec(p);
      cur.pop_back();
    }
  };
  rec(0);
}

bool two_edge_connected(int n, const Edges& e) {
  return oracle::component_count(n, e) == 1 && oracle::bridges_by_deletion(n, e).empty();
}

// Colored canonical form over all n! relabelings.
std::vector<std::tuple<int, int, int>> colored_canonical(int n, const Edges& e, const std::vector<int>& col) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::tuple<int, int, int>> best;
  bool first = true;
  do {
    std::vector<std::tuple<int, int, int>> x;
    for (std::size_t k = 0; k < e.size(); ++k) {
      const int a = p[static_cast<std::size_t>(e[k].first)], b = p[static_cast<std::size_t>(e[k].second)];
      x.emplace_back(std::min(a, b), std::max(a, b), col[k]);
    }
    std::sort(x.begin(), x.end());
    if (first || x < best) best = x;
    first = false;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

UGraph random_two_edge_connected(Rng& rng, int n, int extra) {
  // A cycle through all vertices plus random chords.
  UGraph g;
  g.vertex_count = n;
  if (n == 2) g.edges = {{0, 1}, {0, 1}};
  for (int v = 0; v < n && n > 2; ++v) g.edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  for (int k = 0; k < extra && n > 1; ++k) {
    int a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return g;
}

}  // namespace

TEST_CASE("two-edge-connected multigraphs match brute-force isomorphism classes") {
  const int max_v = 5, max_e = 6;
  std::set<std::pair<int, Edges>> want;
  for (int n = 1; n <= max_v; ++n)
    for (int m = 0; m <= max_e; ++m)
      for_each_multigraph(n, m, [&](const Edges& e) {
        if (two_edge_connected(n, e)) want.insert({n, oracle::canonical_by_permutations(n, e)});
      });
  const auto got = two_edge_connected_multigraphs(max_v, max_e);
  std::set<std::pair<int, Edges>> got_set;
  for (const auto& g : got) {
    CHECK(two_edge_connected(g.vertex_count, g.edges));
    got_set.insert({g.vertex_count, oracle::canonical_by_permutations(g.vertex_count, g.edges)});
  }
  CHECK(got.size() == got_set.size());  // no two outputs isomorphic
  CHECK(got_set == want);
  CHECK(got.size() == 38);
}

TEST_CASE("edge colorings are one per automorphism orbit") {
  for (const auto& g : two_edge_connected_multigraphs(4, 5)) {
    for (int colors : {2, 3}) {
      std::set<std::vector<std::tuple<int, int, int>>> orbits;
      oracle::for_each_tuple(g.edge_count(), colors, [&](const std::vector<long long>& x) {
        orbits.insert(colored_canonical(g.vertex_count, g.edges, std::vector<int>(x.begin(), x.end())));
      });
      const auto reps = edge_colorings(g, colors);
      std::set<std::vector<std::tuple<int, int, int>>> seen;
      for (const auto& c : reps) seen.insert(colored_canonical(g.vertex_count, g.edges, c));
      CHECK(reps.size() == seen.size());
      CHECK(seen == orbits);
    }
  }
}

TEST_CASE("per-string exponent check agrees with the direct enumeration") {
  Rng rng = derive_rng(21, {});
  const std::vector<StringAssignment> assignments{
      StringAssignment({"1", "2", "3"}, {"B", "G", "R"}, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}}),
      StringAssignment({"s"}, {"a", "b"}, {{0, 0}, {0, 1}}),
      StringAssignment({"s", "t"}, {"a", "b"}, {{0, 0}, {1, 1}}),
      StringAssignment({"s", "t"}, {"a", "b", "c"}, {{0, 0}, {0, 1}, {1, 1}, {1, 2}}),
  };
  for (const auto& a : assignments)
    for (int trial = 0; trial < 12; ++trial) {
      const int n = 1 + static_cast<int>(uniform_below(rng, 4));
      const UGraph g = random_two_edge_connected(rng, n, static_cast<int>(uniform_below(rng, 3)));
      std::vector<int> coloring;
      for (int e = 0; e < g.edge_count(); ++e)
        coloring.push_back(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(a.color_count()))));
      const ColoredDigraph t = orient(g, coloring);
      const ExponentGraphResult fast = check_exponent_bound(t, a);
      const ExponentGraphResult direct = check_exponent_bound_direct(t, a);
      CHECK(fast.violations.empty());
      CHECK(direct.violations.empty());
      CHECK_FALSE(fast.used_full_enumeration);
    }
}

TEST_CASE("orientation and loops do not change exponents or GCC trees") {
  Rng rng = derive_rng(22, {});
  const StringAssignment a({"1", "2", "3"}, {"B", "G", "R"}, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 3));
    const UGraph g = random_two_edge_connected(rng, n, 1);
    std::vector<int> coloring;
    for (int e = 0; e < g.edge_count(); ++e) coloring.push_back(static_cast<int>(uniform_below(rng, 3)));
    const ColoredDigraph t = orient(g, coloring);
    ColoredDigraph flipped = t;
    for (auto& e : flipped.graph.edges)
      if (uniform_below(rng, 2)) std::swap(e.first, e.second);
    ColoredDigraph looped = t;
    const int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    looped.graph.edges.emplace_back(v, v);
    looped.edge_color.push_back(static_cast<int>(uniform_below(rng, 3)));
    CHECK(rho_all(t, a) == rho_all(flipped, a));
    CHECK(rho_all(t, a) == rho_all(looped, a));
    for_each_admissible(t, a, {}, [&](const MultiPartition& pi) {
      const ExponentReport base = growth_exponent(t, pi, a);
      CHECK(growth_exponent(flipped, pi, a).per_string == base.per_string);
      CHECK(all_gcc_trees(flipped, pi, a) == all_gcc_trees(t, pi, a));
      CHECK(growth_exponent(looped, pi, a).per_string == base.per_string);
      CHECK(all_gcc_trees(looped, pi, a) == all_gcc_trees(t, pi, a));
    });
  }
}

TEST_CASE("small sweep over the worked-example assignment") {
  const StringAssignment a({"1", "2", "3"}, {"B", "G", "R"}, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
  const ExponentSweepReport r = exponent_bound_sweep(a, 4, 5);
  CHECK(r.graphs == 15);
  CHECK(r.colored_graphs == 621);
  CHECK(r.violations == 0);
  CHECK(r.full_enumerations == 0);
  CHECK(r.configurations > 0);
}
