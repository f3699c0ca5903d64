#include "trafficlab/sofic.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

#include "trafficlab/rng.hpp"

namespace trafficlab {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<int>> table, std::vector<int> generators)
    : table_(std::move(table)), generators_(std::move(generators)) {
  const int n = order();
  if (n < 1) throw std::invalid_argument("group table: empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table: not square");
    for (int x : row)
      if (x < 0 || x >= n) throw std::invalid_argument("group table: entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = multiply(e, x) == x && multiply(x, e) == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("group table: no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          throw std::invalid_argument("group table: not associative");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (multiply(a, b) == identity_ && multiply(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
    if (inverse_[static_cast<std::size_t>(a)] < 0)
      throw std::invalid_argument("group table: element " + std::to_string(a) + " has no inverse");
  }
  for (int gen : generators_)
    if (gen < 0 || gen >= n) throw std::invalid_argument("group table: generator out of range");
}

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group: order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return FiniteGroupTable(std::move(t), {n > 1 ? 1 : 0});
}

const char* to_string(RepKind k) {
  switch (k) {
    case RepKind::left_regular: return "left-regular";
    case RepKind::cyclic_shift: return "cyclic-shift";
    case RepKind::padded: return "padded";
    case RepKind::graph_product: return "graph-product";
  }
  return "?";
}

GeneratorRep left_regular_rep(const FiniteGroupTable& g) {
  GeneratorRep rep;
  rep.side = g.order();
  rep.provenance = RepKind::left_regular;
  for (std::size_t j = 0; j < g.generators().size(); ++j) {
    std::vector<int> images(static_cast<std::size_t>(g.order()));
    for (int x = 0; x < g.order(); ++x) images[static_cast<std::size_t>(x)] = g.multiply(g.generators()[j], x);
    rep.generators.emplace_back(std::vector<int>{0}, g.order(), Permutation(std::move(images)));
    rep.names.push_back("g" + std::to_string(j + 1));
    rep.generator_color.push_back(0);
    rep.generator_index.push_back(static_cast<int>(j));
  }
  return rep;
}

GeneratorRep cyclic_shift_rep(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_shift_rep: N must be positive");
  GeneratorRep rep;
  rep.side = n;
  rep.provenance = RepKind::cyclic_shift;
  rep.generators.emplace_back(std::vector<int>{0}, n, Permutation::cyclic_shift(n));
  rep.names.push_back("t");
  rep.generator_color.push_back(0);
  rep.generator_index.push_back(0);
  return rep;
}

GeneratorRep pad_rep(const GeneratorRep& rep, int target) {
  if (rep.strings != 1) throw std::invalid_argument("pad_rep: only single-string representations can be padded");
  if (target < rep.side) throw std::invalid_argument("pad_rep: target smaller than the representation");
  const int n = rep.side, q = target / n;
  GeneratorRep out = rep;
  out.side = target;
  out.provenance = RepKind::padded;
  out.generators.clear();
  for (const auto& gen : rep.generators) {
    std::vector<int> images(static_cast<std::size_t>(target));
    for (int x = 0; x < target; ++x)
      images[static_cast<std::size_t>(x)] = x < q * n ? (x / n) * n + gen.local()(x % n) : x;
    out.generators.emplace_back(std::vector<int>{0}, target, Permutation(std::move(images)));
  }
  return out;
}

Rational hamming_distance(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("hamming_distance: size mismatch");
  if (p.size() == 0) throw std::invalid_argument("hamming_distance: empty permutations");
  int differ = 0;
  for (int i = 0; i < p.size(); ++i) differ += p(i) != q(i);
  return Rational(differ, p.size());
}

Rational comparison_trace(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("comparison_trace: size mismatch");
  if (p.size() == 0) throw std::invalid_argument("comparison_trace: empty permutations");
  return Rational(p.inverse().compose(q).fixed_points(), p.size());
}

std::int64_t generator_element(const VertexGroup& g, int j, bool inverse) {
  if (!g.finite) {
    if (j != 0) throw std::invalid_argument("integer vertex group has a single generator");
    return inverse ? -1 : 1;
  }
  const auto& gens = g.finite->generators();
  if (j < 0 || j >= static_cast<int>(gens.size())) throw std::invalid_argument("generator index out of range");
  const int x = gens[static_cast<std::size_t>(j)];
  return inverse ? g.finite->inverse(x) : x;
}

namespace {

bool is_identity(const VertexGroup& g, std::int64_t x) { return g.finite ? x == g.finite->identity() : x == 0; }

std::int64_t multiply(const VertexGroup& g, std::int64_t a, std::int64_t b) {
  return g.finite ? g.finite->multiply(static_cast<int>(a), static_cast<int>(b)) : a + b;
}

}  // namespace

std::vector<ColoredLetter> graph_product_normal_form(const ColorGraph& g, const std::vector<VertexGroup>& groups,
                                                     const std::vector<ColoredLetter>& word) {
  if (static_cast<int>(groups.size()) != g.size()) throw std::invalid_argument("normal form: one group per color");
  std::vector<ColoredLetter> out;
  for (const auto& x : word) {
    if (x.color < 0 || x.color >= g.size()) throw std::invalid_argument("normal form: color out of range");
    const VertexGroup& grp = groups[static_cast<std::size_t>(x.color)];
    if (grp.finite && (x.element < 0 || x.element >= grp.finite->order()))
      throw std::invalid_argument("normal form: letter not in its vertex group");
    if (is_identity(grp, x.element)) continue;
    bool merged = false;
    for (std::size_t k = out.size(); k-- > 0;) {
      if (out[k].color == x.color) {
        const std::int64_t prod = multiply(grp, out[k].element, x.element);
        if (is_identity(grp, prod))
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
        else
          out[k].element = prod;
        merged = true;
        break;
      }
      if (!g.adjacent(out[k].color, x.color)) break;
    }
    if (!merged) out.push_back(x);
  }
  return out;
}

bool word_triviality(const ColorGraph& g, const std::vector<VertexGroup>& groups,
                     const std::vector<ColoredLetter>& word) {
  return graph_product_normal_form(g, groups, word).empty();
}

GeneratorRep graph_product_rep(const ColorGraph& g, const StringAssignment& a, const std::vector<GeneratorRep>& vertex_reps,
                               int n, std::uint64_t seed) {
  if (g.size() != a.color_count()) throw std::invalid_argument("graph_product_rep: color count mismatch");
  if (!validate_assignment(g, a).valid) throw std::invalid_argument("graph_product_rep: assignment does not realize the graph");
  if (static_cast<int>(vertex_reps.size()) != g.size())
    throw std::invalid_argument("graph_product_rep: one vertex representation per color required");
  if (n < 1) throw std::invalid_argument("graph_product_rep: N must be positive");
  GeneratorRep out;
  out.strings = a.string_count();
  out.side = n;
  out.provenance = RepKind::graph_product;
  for (int c = 0; c < g.size(); ++c) {
    const GeneratorRep& rep = vertex_reps[static_cast<std::size_t>(c)];
    const Index m = checked_pow(n, static_cast<Index>(a.strings_of(c).size()));
    if (rep.strings != 1 || rep.side != m)
      throw std::invalid_argument("graph_product_rep: representation of color " + g.names()[static_cast<std::size_t>(c)] +
                                  " has size " + std::to_string(rep.side) + ", expected N^#S_c = " + std::to_string(m));
    Rng rng = derive_rng(seed, {static_cast<std::uint64_t>(c)});
    const Permutation sigma = Permutation::sample(static_cast<int>(m), rng);
    for (std::size_t j = 0; j < rep.generators.size(); ++j) {
      out.generators.emplace_back(a.strings_of(c), n, conjugate(rep.generators[j].local(), sigma));
      out.names.push_back(g.names()[static_cast<std::size_t>(c)] +
                          (rep.generators.size() > 1 ? "." + std::to_string(j + 1) : std::string()));
      out.generator_color.push_back(c);
      out.generator_index.push_back(rep.generator_index[j]);
    }
  }
  return out;
}

GeneratorRep graph_product_rep_padded(const ColorGraph& g, const StringAssignment& a,
                                      const std::vector<GeneratorRep>& vertex_reps, int n, std::uint64_t seed) {
  std::vector<GeneratorRep> padded;
  for (int c = 0; c < static_cast<int>(vertex_reps.size()) && c < a.color_count(); ++c)
    padded.push_back(pad_rep(vertex_reps[static_cast<std::size_t>(c)],
                             static_cast<int>(checked_pow(n, static_cast<Index>(a.strings_of(c).size())))));
  return graph_product_rep(g, a, padded, n, seed);
}

std::vector<CommutationDefect> commutation_defects(const GeneratorRep& rep, const ColorGraph& g) {
  std::vector<CommutationDefect> out;
  const int k = static_cast<int>(rep.generators.size());
  std::vector<Permutation> full;
  for (int j = 0; j < k; ++j) full.push_back(rep.full(j));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int ci = rep.generator_color.at(static_cast<std::size_t>(i));
      const int cj = rep.generator_color.at(static_cast<std::size_t>(j));
      if (ci == cj || !g.adjacent(ci, cj)) continue;
      Permutation ab = full[static_cast<std::size_t>(i)].compose(full[static_cast<std::size_t>(j)]);
      Permutation ba = full[static_cast<std::size_t>(j)].compose(full[static_cast<std::size_t>(i)]);
      if (ab != ba) out.push_back({i, j, hamming_distance(ab, ba)});
    }
  return out;
}

std::vector<std::vector<WordLetter>> all_words(int generators, int max_length) {
  std::vector<std::vector<WordLetter>> out{{}};
  std::vector<std::vector<WordLetter>> layer{{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::vector<WordLetter>> next;
    for (const auto& w : layer)
      for (int f = 0; f < generators; ++f)
        for (bool inv : {false, true}) {
          auto x = w;
          x.push_back({f, inv});
          next.push_back(std::move(x));
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

bool rep_word_trivial(const GeneratorRep& rep, const ColorGraph& g, const std::vector<VertexGroup>& groups,
                      const std::vector<WordLetter>& word) {
  std::vector<ColoredLetter> letters;
  for (const auto& l : word) {
    const int color = rep.generator_color.at(static_cast<std::size_t>(l.factor));
    const int index = rep.generator_index.at(static_cast<std::size_t>(l.factor));
    letters.push_back({color, generator_element(groups.at(static_cast<std::size_t>(color)), index, l.inverse)});
  }
  return word_triviality(g, groups, letters);
}

std::string format_word(const GeneratorRep& rep, const std::vector<WordLetter>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (const auto& l : word) {
    if (!s.empty()) s += ' ';
    s += rep.names.at(static_cast<std::size_t>(l.factor));
    if (l.inverse) s += "^-1";
  }
  return s;
}

std::vector<WordLetter> parse_word(const GeneratorRep& rep, const std::string& text) {
  std::vector<WordLetter> word;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    bool inverse = false;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      inverse = true;
      tok.resize(tok.size() - 3);
    }
    int found = -1;
    for (std::size_t j = 0; j < rep.names.size(); ++j)
      if (rep.names[j] == tok) found = static_cast<int>(j);
    if (found < 0) throw std::invalid_argument("unknown generator '" + tok + "'");
    word.push_back({found, inverse});
  }
  return word;
}

SoficCertificate certify(const GeneratorRep& rep, const std::vector<std::vector<WordLetter>>& words,
                         const std::vector<bool>& truth) {
  if (words.size() != truth.size()) throw std::invalid_argument("certify: one truth flag per word required");
  SoficCertificate cert;
  const MultiIndexSpace space = rep.space();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const auto& l : words[i])
      if (l.factor < 0 || l.factor >= static_cast<int>(rep.generators.size()))
        throw std::invalid_argument("certify: generator index out of range");
    CertificateEntry e;
    e.word = words[i];
    e.text = format_word(rep, words[i]);
    e.trivial = truth[i];
    e.trace = perm_word_trace(rep.generators, words[i], space);
    e.deviation = abs(e.trace - Rational(truth[i] ? 1 : 0));
    if (e.deviation > cert.max_deviation) cert.max_deviation = e.deviation;
    cert.entries.push_back(std::move(e));
  }
  return cert;
}

}  // namespace trafficlab
