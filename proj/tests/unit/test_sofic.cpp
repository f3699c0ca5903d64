#include <doctest.h>

#include "trafficlab/rng.hpp"
#include "trafficlab/sofic.hpp"

using namespace trafficlab;

namespace {

const std::vector<std::vector<int>> kS3{{0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4},
                                        {3, 5, 4, 0, 2, 1}, {4, 3, 5, 1, 0, 2}, {5, 4, 3, 2, 1, 0}};

FiniteGroupTable klein() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a ^ b;
  return FiniteGroupTable(t, {1, 2});
}

std::vector<ColoredLetter> random_word(Rng& rng, const std::vector<VertexGroup>& groups, int len) {
  std::vector<ColoredLetter> w;
  for (int i = 0; i < len; ++i) {
    const int c = static_cast<int>(uniform_below(rng, groups.size()));
    const auto& g = groups[static_cast<std::size_t>(c)];
    const std::int64_t x = g.finite ? static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(g.finite->order())))
                                    : static_cast<std::int64_t>(uniform_below(rng, 5)) - 2;
    w.push_back({c, x});
  }
  return w;
}

}  // namespace

TEST_CASE("group tables are validated") {
  CHECK_NOTHROW(FiniteGroupTable(kS3, {1, 3}));
  CHECK_THROWS(FiniteGroupTable({}, {}));
  CHECK_THROWS(FiniteGroupTable({{0, 1}, {1}}, {}));
  CHECK_THROWS(FiniteGroupTable({{0, 2}, {1, 0}}, {}));
  CHECK_THROWS(FiniteGroupTable({{1, 1}, {1, 1}}, {}));      // no identity
  CHECK_THROWS(FiniteGroupTable({{0, 1}, {1, 1}}, {}));      // 1 has no inverse
  CHECK_THROWS(FiniteGroupTable({{0, 1}, {1, 0}}, {2}));     // generator outside
  // Identity and inverses exist but (1·1)·2 ≠ 1·(1·2).
  CHECK_THROWS(FiniteGroupTable({{0, 1, 2}, {1, 0, 0}, {2, 0, 0}}, {}));
  const FiniteGroupTable s3(kS3, {1, 3});
  CHECK(s3.identity() == 0);
  for (int a = 0; a < 6; ++a) CHECK(s3.multiply(a, s3.inverse(a)) == 0);
  const FiniteGroupTable z5 = FiniteGroupTable::cyclic(5);
  CHECK(z5.inverse(2) == 3);
}

TEST_CASE("direct products: triviality is componentwise") {
  Rng rng = derive_rng(31, {});
  const ColorGraph g = ColorGraph::complete(3);
  const std::vector<VertexGroup> groups{VertexGroup::of(FiniteGroupTable(kS3, {1, 3})), VertexGroup::integers(),
                                        VertexGroup::of(FiniteGroupTable::cyclic(3))};
  int trivial = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto w = random_word(rng, groups, 1 + static_cast<int>(uniform_below(rng, 6)));
    std::vector<std::int64_t> acc{0, 0, 0};
    for (const auto& l : w) {
      auto& a = acc[static_cast<std::size_t>(l.color)];
      if (l.color == 0) a = kS3[static_cast<std::size_t>(a)][static_cast<std::size_t>(l.element)];
      else if (l.color == 1) a += l.element;
      else a = (a + l.element) % 3;
    }
    const bool want = acc == std::vector<std::int64_t>{0, 0, 0};
    trivial += want;
    CHECK(word_triviality(g, groups, w) == want);
  }
  CHECK(trivial > 50);
}

TEST_CASE("free products of Z/2: triviality is free cancellation") {
  Rng rng = derive_rng(32, {});
  const ColorGraph g = ColorGraph::edgeless(3);
  const std::vector<VertexGroup> groups(3, VertexGroup::of(FiniteGroupTable::cyclic(2)));
  int trivial = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto w = random_word(rng, groups, static_cast<int>(uniform_below(rng, 9)));
    std::vector<int> stack;
    for (const auto& l : w) {
      if (l.element == 0) continue;
      if (!stack.empty() && stack.back() == l.color) stack.pop_back();
      else stack.push_back(l.color);
    }
    trivial += stack.empty();
    CHECK(word_triviality(g, groups, w) == stack.empty());
  }
  CHECK(trivial > 100);
  CHECK_THROWS(word_triviality(g, groups, {{0, 2}}));
  CHECK_THROWS(word_triviality(g, groups, {{3, 1}}));
}

TEST_CASE("left-regular representations certify exactly") {
  std::vector<FiniteGroupTable> groups;
  for (int n = 1; n <= 6; ++n) groups.push_back(FiniteGroupTable::cyclic(n));
  groups.push_back(klein());
  groups.push_back(FiniteGroupTable(kS3, {1, 3}));
  for (const auto& grp : groups) {
    const GeneratorRep rep = left_regular_rep(grp);
    const ColorGraph one(std::vector<std::string>{"g"});
    const std::vector<VertexGroup> vg{VertexGroup::of(grp)};
    const auto words = all_words(static_cast<int>(rep.generators.size()), 4);
    std::vector<bool> truth;
    for (const auto& w : words) {
      // Multiply in the table directly.
      int x = grp.identity();
      for (const auto& l : w) {
        const int gen = grp.generators()[static_cast<std::size_t>(l.factor)];
        x = grp.multiply(x, l.inverse ? grp.inverse(gen) : gen);
      }
      truth.push_back(x == grp.identity());
      CHECK(rep_word_trivial(rep, one, vg, w) == truth.back());
    }
    const SoficCertificate cert = certify(rep, words, truth);
    CHECK(cert.max_deviation == 0);
    CHECK(cert.entries.size() == words.size());
  }
}

TEST_CASE("padding keeps q copies plus a fixed block") {
  const GeneratorRep rep = left_regular_rep(FiniteGroupTable(kS3, {1, 3}));
  const auto words = all_words(2, 3);
  for (int target : {6, 7, 11, 12, 20}) {
    const GeneratorRep p = pad_rep(rep, target);
    const int q = target / 6, r = target % 6;
    for (const auto& w : words) {
      const Rational tr = perm_word_trace(rep.generators, w, rep.space());
      CHECK(perm_word_trace(p.generators, w, p.space()) == (Rational(q * 6) * tr + r) / target);
    }
  }
  CHECK_THROWS(pad_rep(rep, 5));
}

TEST_CASE("Hamming distance is one minus the comparison trace") {
  Rng rng = derive_rng(33, {});
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 64));
    const Permutation p = Permutation::sample(n, rng), q = Permutation::sample(n, rng);
    int differ = 0;
    for (int i = 0; i < n; ++i) differ += p(i) != q(i);
    CHECK(hamming_distance(p, q) == Rational(differ, n));
    CHECK(hamming_distance(p, q) == 1 - comparison_trace(p, q));
  }
}

TEST_CASE("graph-product representations respect commutation") {
  Rng rng = derive_rng(34, {});
  for (int colors = 1; colors <= 4; ++colors) {
    const unsigned masks = 1u << (colors * (colors - 1) / 2);
    for (unsigned mask = 0; mask < masks; ++mask) {
      const ColorGraph g = ColorGraph::from_mask(colors, mask);
      const StringAssignment a = build_string_assignment(g);
      std::vector<GeneratorRep> reps;
      std::vector<VertexGroup> groups;
      for (int c = 0; c < colors; ++c) {
        const FiniteGroupTable t = FiniteGroupTable::cyclic(2 + c % 2);
        reps.push_back(left_regular_rep(t));
        groups.push_back(VertexGroup::of(t));
      }
      const GeneratorRep rep = graph_product_rep_padded(g, a, reps, 3, 5 + mask);
      CHECK(commutation_defects(rep, g).empty());
      // A trivial word is a relation of the group, so its trace is exactly 1.
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<WordLetter> w;
        const int len = static_cast<int>(uniform_below(rng, 7));
        for (int i = 0; i < len; ++i)
          w.push_back({static_cast<int>(uniform_below(rng, rep.generators.size())), uniform_below(rng, 2) == 1});
        if (rep_word_trivial(rep, g, groups, w)) CHECK(perm_word_trace(rep.generators, w, rep.space()) == 1);
      }
    }
  }
}

TEST_CASE("direct-product representation is faithful") {
  // Complete graph: each color owns a string, so the rep is a tensor product
  // of faithful regular actions and trace 1 means the identity element.
  const ColorGraph g = ColorGraph::complete(2);
  const StringAssignment a = build_string_assignment(g);
  const std::vector<GeneratorRep> reps{left_regular_rep(klein()), left_regular_rep(klein())};
  const GeneratorRep rep = graph_product_rep(g, a, reps, 4, 9);
  const std::vector<VertexGroup> groups{VertexGroup::of(klein()), VertexGroup::of(klein())};
  const auto words = all_words(4, 3);
  for (const auto& w : words)
    CHECK(rep_word_trivial(rep, g, groups, w) == (perm_word_trace(rep.generators, w, rep.space()) == 1));
  CHECK_THROWS(graph_product_rep(g, a, reps, 3, 9));
}

TEST_CASE("word text round-trips") {
  const ColorGraph g = ColorGraph::edgeless(2);
  const StringAssignment a = build_string_assignment(g);
  const std::vector<GeneratorRep> reps{cyclic_shift_rep(4), left_regular_rep(klein())};
  const GeneratorRep rep = graph_product_rep_padded(g, a, reps, 4, 1);
  for (const auto& w : all_words(static_cast<int>(rep.generators.size()), 2)) {
    const auto back = parse_word(rep, format_word(rep, w));
    REQUIRE(back.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(back[i].factor == w[i].factor);
      CHECK(back[i].inverse == w[i].inverse);
    }
  }
  CHECK(parse_word(rep, "e").empty());
  CHECK_THROWS(parse_word(rep, "zz"));
}
