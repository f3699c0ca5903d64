#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trafficlab/color_graph.hpp"
#include "trafficlab/permutation.hpp"
#include "trafficlab/scalar.hpp"

namespace trafficlab {

/// A finite group given by its multiplication table, with a list of
/// generators (as element indices). g_{-j} = g_j^{-1}.
class FiniteGroupTable {
 public:
  FiniteGroupTable() = default;
  /// Throws std::invalid_argument unless the table is a group (closure,
  /// associativity, identity, inverses) and the generators are elements.
  FiniteGroupTable(std::vector<std::vector<int>> table, std::vector<int> generators);

  static FiniteGroupTable cyclic(int n);  // generator 1

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<int>& generators() const { return generators_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> generators_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

enum class RepKind { left_regular, cyclic_shift, padded, graph_product };
const char* to_string(RepKind k);

/// Permutations T_j of [N]^strings, one per generator; T_{-j} is the inverse.
/// Single-group representations use one string of side N.
struct GeneratorRep {
  int strings = 1;
  int side = 0;
  std::vector<CoordinatePermutation> generators;
  std::vector<std::string> names;
  std::vector<int> generator_color;  // graph products only
  std::vector<int> generator_index;  // index within its vertex group
  RepKind provenance = RepKind::left_regular;

  Index dimension() const { return checked_pow(side, strings); }
  MultiIndexSpace space() const { return MultiIndexSpace(strings, side); }
  /// Full permutation of generator j.
  Permutation full(int j) const { return generators.at(static_cast<std::size_t>(j)).expand(space()); }
};

GeneratorRep left_regular_rep(const FiniteGroupTable& g);
GeneratorRep cyclic_shift_rep(int n);
/// q = target div N copies of the representation plus an identity block of
/// size r = target mod N. Single-string representations only.
GeneratorRep pad_rep(const GeneratorRep& rep, int target);

/// #{i : p(i) ≠ q(i)} / N.
Rational hamming_distance(const Permutation& p, const Permutation& q);
/// tr(Σ* T) for Σ = P_p, T = P_q: the fixed-point fraction of p⁻¹∘q.
Rational comparison_trace(const Permutation& p, const Permutation& q);

/// A vertex group: finite (by table) or infinite cyclic.
struct VertexGroup {
  std::optional<FiniteGroupTable> finite;  // empty means ℤ

  static VertexGroup integers() { return {}; }
  static VertexGroup of(FiniteGroupTable g) { return {std::move(g)}; }
  int generator_count() const { return finite ? static_cast<int>(finite->generators().size()) : 1; }
};

/// Element of a vertex group: an element index for finite groups, an
/// exponent for ℤ.
struct ColoredLetter {
  int color = 0;
  std::int64_t element = 0;
};

/// The element of generator j (inverse when `inverse`) in its vertex group.
std::int64_t generator_element(const VertexGroup& g, int j, bool inverse);

/// Reduced normal form of a graph-product word. Letters are inserted one at a
/// time: a new letter moves left past letters of adjacent colors and merges
/// with a letter of its own color if it reaches one; identity letters vanish.
/// Reduced words are equal iff they are commutation-equivalent, so the word is
/// trivial iff the result is empty. Throws std::invalid_argument on a letter
/// outside its group.
std::vector<ColoredLetter> graph_product_normal_form(const ColorGraph& g, const std::vector<VertexGroup>& groups,
                                                     const std::vector<ColoredLetter>& word);
bool word_triviality(const ColorGraph& g, const std::vector<VertexGroup>& groups,
                     const std::vector<ColoredLetter>& word);

/// Z_{c,j} = Σ_c* T_{c,j} Σ_c ⊗ I on [N]^S with independent uniform Σ_c per
/// color drawn from `seed`. vertex_reps[c] must have one string and size
/// N^{#S_c}.
GeneratorRep graph_product_rep(const ColorGraph& g, const StringAssignment& a, const std::vector<GeneratorRep>& vertex_reps,
                               int n, std::uint64_t seed);
/// Pads each vertex representation to N^{#S_c} first.
GeneratorRep graph_product_rep_padded(const ColorGraph& g, const StringAssignment& a,
                                      const std::vector<GeneratorRep>& vertex_reps, int n, std::uint64_t seed);

/// Pairs of generators of adjacent colors whose permutations do not commute,
/// with the Hamming distance between the two products. Empty on success.
struct CommutationDefect {
  int first = 0;
  int second = 0;
  Rational distance;
};
std::vector<CommutationDefect> commutation_defects(const GeneratorRep& rep, const ColorGraph& g);

/// All words of length 1..max_length over the generators and their inverses,
/// plus the empty word first.
std::vector<std::vector<WordLetter>> all_words(int generators, int max_length);

/// Ground truth for rep words: graph products use the colors of the
/// generators, single groups a one-vertex graph.
bool rep_word_trivial(const GeneratorRep& rep, const ColorGraph& g, const std::vector<VertexGroup>& groups,
                      const std::vector<WordLetter>& word);

std::string format_word(const GeneratorRep& rep, const std::vector<WordLetter>& word);
/// Inverse of format_word: tokens separated by spaces, "name" or "name^-1";
/// "e" or an empty string is the empty word.
std::vector<WordLetter> parse_word(const GeneratorRep& rep, const std::string& text);

struct CertificateEntry {
  std::vector<WordLetter> word;
  std::string text;
  bool trivial = false;
  Rational trace;
  Rational deviation;  // |tr - δ_trivial|
};

struct SoficCertificate {
  std::vector<CertificateEntry> entries;
  Rational max_deviation = 0;
};

/// Exact traces of each word and their deviation from the trivial-word
/// indicator. `truth` runs parallel to `words`.
SoficCertificate certify(const GeneratorRep& rep, const std::vector<std::vector<WordLetter>>& words,
                         const std::vector<bool>& truth);

}  // namespace trafficlab
