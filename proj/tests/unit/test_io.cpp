#include <doctest.h>

#include "trafficlab/io.hpp"

using namespace trafficlab;

TEST_CASE("color graphs and assignments round-trip") {
  for (unsigned mask = 0; mask < 64; ++mask) {
    const ColorGraph g = ColorGraph::from_mask(4, mask);
    const ColorGraph back = color_graph_from_json(Json::parse(to_json(g).dump()));
    CHECK(back.names() == g.names());
    CHECK(back.edges() == g.edges());
    const StringAssignment a = build_string_assignment(g);
    const StringAssignment b = assignment_from_json(Json::parse(to_json(a).dump()));
    CHECK(b.strings() == a.strings());
    CHECK(b.colors() == a.colors());
    CHECK(b.incidence() == a.incidence());
  }
}

TEST_CASE("malformed graphs and assignments are input errors") {
  CHECK_THROWS_AS(color_graph_from_json(Json::parse(R"({"colors":["a","a"],"edges":[]})")), InputError);
  CHECK_THROWS_AS(color_graph_from_json(Json::parse(R"({"colors":["a","b"],"edges":[["a","c"]]})")), InputError);
  CHECK_THROWS_AS(color_graph_from_json(Json::parse(R"({"colors":["a","b"],"edges":[["a","a"]]})")), InputError);
  CHECK_THROWS_AS(color_graph_from_json(Json::parse(R"({"colors":["a","b"],"edges":[["a"]]})")), InputError);
  CHECK_THROWS_AS(color_graph_from_json(Json::parse(R"({"edges":[]})")), InputError);
  // Index references work; out-of-range ones do not.
  CHECK(color_graph_from_json(Json::parse(R"({"colors":["a","b"],"edges":[[0,1]]})")).adjacent(0, 1));
  CHECK_THROWS_AS(color_graph_from_json(Json::parse(R"({"colors":["a","b"],"edges":[[0,2]]})")), InputError);
  // a and b share string s, so they cannot be adjacent.
  CHECK_THROWS_AS(assignment_from_json(Json::parse(
                      R"({"colors":["a","b"],"edges":[["a","b"]],"strings":["s"],"incidence":[["s","a"],["s","b"]]})")),
                  InputError);
  CHECK_NOTHROW(assignment_from_json(
      Json::parse(R"({"colors":["a","b"],"edges":[],"strings":["s"],"incidence":[["s","a"],["s","b"]]})")));
}

TEST_CASE("group tables and permutations") {
  const FiniteGroupTable z4 = FiniteGroupTable::cyclic(4);
  const FiniteGroupTable back = group_from_json(Json::parse(to_json(z4).dump()));
  CHECK(back.table() == z4.table());
  CHECK(back.generators() == z4.generators());
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"order":2,"table":[[0,1],[1,1]],"generators":[1]})")), InputError);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"order":3,"table":[[0,1],[1,0]],"generators":[1]})")), InputError);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"order":2,"table":[[0,1],[1,0]],"generators":["x"]})")), InputError);
  const Permutation p({2, 0, 1});
  CHECK(permutation_from_json(Json::parse(to_json(p).dump())) == p);
  CHECK_THROWS_AS(permutation_from_json(Json::parse(R"({"n":3,"images":[0,0,1]})")), InputError);
  CHECK_THROWS_AS(permutation_from_json(Json::parse(R"({"n":2,"images":[0,1,2]})")), InputError);
}

TEST_CASE("structured matrices") {
  StructuredMatrix<Complex> m;
  m.support = {0, 2};
  m.n = 2;
  m.entries = Matrix<Complex>::Zero(4, 4);
  for (Index r = 0; r < 4; ++r)
    for (Index c = 0; c < 4; ++c) m.entries(r, c) = Complex(static_cast<double>(r - c), 0.5 * static_cast<double>(r));
  const StructuredMatrix<Complex> back = matrix_from_json(Json::parse(to_json(m).dump()));
  CHECK(back.support == m.support);
  CHECK(back.n == 2);
  CHECK(back.entries == m.entries);
  const auto real_only = matrix_from_json(Json::parse(R"({"support":[1],"n":2,"entries_re":[[1,2],[3,4]]})"));
  CHECK(real_only.entries(1, 0) == Complex(3, 0));
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"support":[1,0],"n":2,"entries_re":[]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"support":[0],"n":2,"entries_re":[[1,2]]})")), InputError);
}

TEST_CASE("named test graphs") {
  const StringAssignment a({"s"}, {"a", "b"}, {{0, 0}, {0, 1}});
  const NamedTestGraph t = test_graph_from_json(
      Json::parse(R"({"vertices":["x","y","z"],"edges":[["x","y","a"],[1,2,"b"],["z","x",0]],"edge_names":["X1","X2","X3"]})"), a);
  CHECK(t.graph.vertex_count() == 3);
  CHECK(t.graph.graph.edges[1] == std::make_pair(1, 2));
  CHECK(t.graph.edge_color == std::vector<int>{0, 1, 0});
  CHECK(t.edge("X2") == 1);
  const Partition p = t.partition_from_json(Json::parse(R"([["x","z"],["y"]])"));
  CHECK(p.same_block(0, 2));
  CHECK(t.to_json(p) == Json::parse(R"([["x","z"],["y"]])"));
  CHECK(t.block_text({0, 2}) == "{x,z}");
  CHECK_THROWS_AS(t.partition_from_json(Json::parse(R"([["x"],["y"]])")), InputError);
  CHECK_THROWS_AS(t.edge("X9"), InputError);
  const NamedTestGraph counted = test_graph_from_json(Json::parse(R"({"vertices":2,"edges":[[0,1,"b"]]})"), a);
  CHECK(counted.edge_names == std::vector<std::string>{"e0"});
  CHECK_THROWS_AS(test_graph_from_json(Json::parse(R"({"vertices":2,"edges":[[0,1,"c"]]})"), a), InputError);
  CHECK_THROWS_AS(test_graph_from_json(Json::parse(R"({"vertices":0,"edges":[]})"), a), InputError);
  CHECK_THROWS_AS(test_graph_from_json(Json::parse(R"({"vertices":2,"edges":[[0,1]]})"), a), InputError);
}

TEST_CASE("rational text") {
  CHECK(rational_text(Rational(3)) == "3");
  CHECK(rational_text(Rational(-39, 2)) == "-39/2");
  CHECK(rational_text(Rational(4, 8)) == "1/2");
}
