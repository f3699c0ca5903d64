#pragma once

#include <string>
#include <utility>
#include <vector>

namespace trafficlab {

/// Simple graph on colors. Colors are referred to by index; names are kept for
/// I/O only. Adjacent colors commute.
class ColorGraph {
 public:
  ColorGraph() = default;
  explicit ColorGraph(std::vector<std::string> colors);
  ColorGraph(std::vector<std::string> colors, const std::vector<std::pair<int, int>>& edges);

  static ColorGraph edgeless(int n);
  static ColorGraph complete(int n);
  /// Graph number `mask` among the 2^(n choose 2) graphs on n colors; bit k
  /// corresponds to the k-th pair (a<b) in lexicographic order.
  static ColorGraph from_mask(int n, unsigned mask);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 if absent

  void add_edge(int a, int b);
  bool adjacent(int a, int b) const { return adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  /// Pairs (a<b), lexicographic.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> adj_;
};

/// Strings, colors and the incidence relation between them. Strings are
/// ordered; that order is the multi-index order (first string most significant).
class StringAssignment {
 public:
  StringAssignment() = default;
  StringAssignment(std::vector<std::string> strings, std::vector<std::string> colors,
                   const std::vector<std::pair<int, int>>& incidence);  // (string, color)

  int string_count() const { return static_cast<int>(strings_.size()); }
  int color_count() const { return static_cast<int>(colors_.size()); }
  const std::vector<std::string>& strings() const { return strings_; }
  const std::vector<std::string>& colors() const { return colors_; }
  int string_index(const std::string& name) const;  // -1 if absent
  int color_index(const std::string& name) const;

  bool incident(int s, int c) const { return inc_[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)]; }
  /// S_c, ascending string indices.
  const std::vector<int>& strings_of(int c) const { return strings_of_[static_cast<std::size_t>(c)]; }
  /// C_s, ascending color indices.
  const std::vector<int>& colors_of(int s) const { return colors_of_[static_cast<std::size_t>(s)]; }
  std::vector<std::pair<int, int>> incidence() const;

  /// Colors with disjoint string sets are adjacent.
  ColorGraph derived_color_graph() const;

 private:
  std::vector<std::string> strings_;
  std::vector<std::string> colors_;
  std::vector<std::vector<bool>> inc_;
  std::vector<std::vector<int>> strings_of_;
  std::vector<std::vector<int>> colors_of_;
};

/// One string per non-adjacent pair {a,b} named "s_a_b" (sorted by color index),
/// plus a private string "s_a" for every color adjacent to all others.
StringAssignment build_string_assignment(const ColorGraph& g);

struct AssignmentViolation {
  int color_a = -1;
  int color_b = -1;  // -1 when the violation is an empty S_c
  std::string reason;
};

struct AssignmentReport {
  bool valid = true;
  std::vector<AssignmentViolation> violations;
};

/// Checks S_c nonempty and S_c ∩ S_c' = ∅ exactly when {c,c'} is an edge.
/// Throws std::invalid_argument when the color lists disagree.
AssignmentReport validate_assignment(const ColorGraph& g, const StringAssignment& a);

/// Coloring of a word; optional letter lengths.
struct ColorWord {
  std::vector<int> colors;
  std::vector<int> lengths;

  int length() const { return static_cast<int>(colors.size()); }
};

/// Every pair of equal colors is separated by a letter whose color is equal to
/// or not adjacent to theirs.
bool is_g_reduced(const ColorWord& w, const ColorGraph& g);
bool is_g_reduced(const std::vector<int>& colors, const ColorGraph& g);

}  // namespace trafficlab
