#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "trafficlab/experiments.hpp"
#include "trafficlab/squared_chain.hpp"

using namespace trafficlab;

namespace {

ChainSpec edgeless_spec(std::vector<int> chi, std::vector<int> ell, int colors = 2) {
  ChainSpec s;
  s.color_graph = ColorGraph::edgeless(colors);
  s.assignment = build_string_assignment(s.color_graph);
  s.chi = std::move(chi);
  s.ell = std::move(ell);
  return s;
}

}  // namespace

TEST_CASE("squared chain shape") {
  for (const ChainSpec& spec : small_chain_specs(2, 4)) {
    const SquaredChain c = build_squared_chain(spec);
    int total = 0;
    for (int l : spec.ell) total += l;
    CHECK(c.skeleton.vertex_count() == 2 * total - 1);
    CHECK(c.skeleton.edge_count() == 2 * total);
    CHECK(is_two_edge_connected(c.skeleton.graph));
    CHECK(c.u[0][0] == c.u_prime[0][0]);
    for (int i = 0; i < c.k; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const auto next = static_cast<std::size_t>((i + 1) % c.k);
      CHECK(c.u[ii].back() == c.u[next].front());
      CHECK(c.u_prime[ii].back() == c.u_prime[next].front());
      for (int j = 0; j < spec.ell[ii]; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const int e = c.x_edge[ii][jj], f = c.x_star_edge[ii][jj];
        CHECK(c.skeleton.graph.edges[static_cast<std::size_t>(e)] == std::make_pair(c.u[ii][jj + 1], c.u[ii][jj]));
        CHECK(c.skeleton.graph.edges[static_cast<std::size_t>(f)] ==
              std::make_pair(c.u_prime[ii][jj], c.u_prime[ii][jj + 1]));
        CHECK(c.skeleton.edge_color[static_cast<std::size_t>(e)] == spec.chi[ii]);
        CHECK(c.skeleton.edge_color[static_cast<std::size_t>(f)] == spec.chi[ii]);
      }
    }
  }
  ChainSpec bad = edgeless_spec({0, 0}, {1, 1});
  CHECK_THROWS(build_squared_chain(bad));
  ChainSpec commuting;
  commuting.color_graph = ColorGraph::complete(2);
  commuting.assignment = build_string_assignment(commuting.color_graph);
  commuting.chi = {0, 1, 0};
  commuting.ell = {1, 1, 1};
  CHECK_THROWS(build_squared_chain(commuting));
}

TEST_CASE("rho_I glues the ends of the chosen cycles") {
  const ChainSpec spec = edgeless_spec({0, 1}, {2, 1});
  const SquaredChain c = build_squared_chain(spec);
  const auto subsets = all_signed_subsets(2);
  CHECK(subsets.size() == 16);
  for (const auto& subset : subsets) {
    const Partition p = rho_subset(c, subset);
    // Union-find oracle over the identified pairs.
    std::vector<std::pair<int, int>> pairs;
    for (int x : subset) {
      const auto& row = x > 0 ? c.u[static_cast<std::size_t>(x - 1)] : c.u_prime[static_cast<std::size_t>(-x - 1)];
      pairs.emplace_back(row.front(), row.back());
    }
    CHECK(p.block_count() == oracle::component_count(c.skeleton.vertex_count(), pairs));
    for (auto [a, b] : pairs) CHECK(p.same_block(a, b));
  }
}

TEST_CASE("J collects the identified cycle ends") {
  const ChainSpec spec = edgeless_spec({0, 1}, {1, 1});
  const SquaredChain c = build_squared_chain(spec);
  const int n = c.skeleton.vertex_count();
  const int strings = spec.assignment.string_count();
  MultiPartition all(static_cast<std::size_t>(strings), Partition::single_block(n));
  CHECK(j_set(c, all) == std::vector<int>{-2, -1, 1, 2});
  MultiPartition none(static_cast<std::size_t>(strings), Partition::singletons(n));
  CHECK(j_set(c, none).empty());
  // With k = 2 both primed cycles run between the same two vertices.
  MultiPartition one = none;
  one[0] = rho_subset(c, {-2});
  CHECK(j_set(c, one) == std::vector<int>{-2, -1});

  const ChainSpec three = edgeless_spec({0, 1, 2}, {1, 1, 1}, 3);
  const SquaredChain c3 = build_squared_chain(three);
  MultiPartition p3(static_cast<std::size_t>(three.assignment.string_count()),
                    Partition::singletons(c3.skeleton.vertex_count()));
  for (auto& p : p3) p = rho_subset(c3, {-3, 2});
  CHECK(j_set(c3, p3) == std::vector<int>{-3, 2});
}

TEST_CASE("signed expansion is exact on small specs") {
  int checked = 0;
  for (ChainSpec spec : small_chain_specs(2, 3)) {
    spec.x_generator = XGenerator::signed_permutation;
    spec.lambda_generator = LambdaGenerator::random_sign;
    if (checked_pow(2, spec.assignment.string_count()) > 8) continue;
    const auto r = signed_expansion_check<long long>(spec, 2, 17 + static_cast<std::uint64_t>(checked));
    CHECK_MESSAGE(r.equal, describe(spec));
    CHECK(r.terms.size() == (std::size_t(1) << (2 * spec.k())));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("permutation fast path equals the dense chain norm") {
  for (XGenerator x : {XGenerator::permutation, XGenerator::cyclic_shift}) {
    ChainSpec spec = edgeless_spec({0, 1, 2}, {1, 2, 1}, 3);
    spec.x_generator = x;
    for (int n : {2, 3})
      for (int sample = 0; sample < 5; ++sample) {
        Rng rng = derive_rng(99, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(sample)});
        auto m = generate_chain_matrices<long long>(spec, n, rng);
        auto sigmas = sample_color_permutations(spec.assignment, n, rng);
        const Rational dense = centered_chain_norm_squared(chain_factors(spec, m, sigmas, n));
        CHECK(chain_norm_sample(spec, n, 99, sample) == doctest::Approx(static_cast<double>(dense)).epsilon(1e-12));
      }
  }
}

TEST_CASE("inconsistency search: empty with J, nonempty without") {
  const ChainSpec spec = edgeless_spec({0, 1}, {1, 1});
  CHECK(inconsistency_search(spec, true).empty());
  const auto control = inconsistency_search(spec, false);
  CHECK_FALSE(control.empty());
  const SquaredChain c = build_squared_chain(spec);
  for (const auto& pi : control) {
    CHECK(admissible(c.skeleton, spec.assignment, pi));
    CHECK(all_gcc_trees(c.skeleton, pi, spec.assignment));
    CHECK_FALSE(j_set(c, pi).empty());
  }
}

TEST_CASE("chain spec enumeration") {
  const auto specs = small_chain_specs(3, 3);
  CHECK(specs.size() == 129);
  std::set<std::string> names;
  for (const auto& s : specs) {
    CHECK_NOTHROW(s.validate());
    names.insert(describe(s));
  }
  CHECK(names.size() == specs.size());
  const StringAssignment a({"1", "2", "3"}, {"B", "G", "R"}, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
  for (const auto& s : chain_specs_for(a, 3)) CHECK_NOTHROW(s.validate());
}

TEST_CASE("convergence statistics") {
  ChainSpec spec = edgeless_spec({0, 1}, {1, 1});
  spec.x_generator = XGenerator::cyclic_shift;
  const ConvergenceReport one = convergence_run(spec, {4, 8}, 20, 5, 1);
  const ConvergenceReport three = convergence_run(spec, {4, 8}, 20, 5, 3);
  REQUIRE(one.points.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(one.points[i].mean == three.points[i].mean);
    CHECK(one.points[i].variance == three.points[i].variance);
    double sum = 0, sq = 0;
    for (int s = 0; s < 20; ++s) {
      const double v = chain_norm_sample(spec, one.points[i].n, 5, s);
      sum += v;
      sq += v * v;
    }
    const double mean = sum / 20;
    CHECK(one.points[i].mean == doctest::Approx(mean));
    CHECK(one.points[i].variance == doctest::Approx((sq - 20 * mean * mean) / 19));
    CHECK(one.points[i].stderr_mean == doctest::Approx(std::sqrt(one.points[i].variance / 20)));
  }
  CHECK(log_log_slope({1, 2, 4}, {1, 0.5, 0.25}) == doctest::Approx(-1.0));
  CHECK(std::isnan(log_log_slope({1, 2}, {1, 0})));
}
