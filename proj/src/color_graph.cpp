#include "trafficlab/color_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace trafficlab {

ColorGraph::ColorGraph(std::vector<std::string> colors)
    : names_(std::move(colors)), adj_(names_.size(), std::vector<bool>(names_.size(), false)) {}

ColorGraph::ColorGraph(std::vector<std::string> colors, const std::vector<std::pair<int, int>>& edges)
    : ColorGraph(std::move(colors)) {
  for (auto [a, b] : edges) add_edge(a, b);
}

ColorGraph ColorGraph::edgeless(int n) {
  std::vector<std::string> names;
  for (int c = 0; c < n; ++c) names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + c)) : "c" + std::to_string(c));
  return ColorGraph(std::move(names));
}

ColorGraph ColorGraph::complete(int n) {
  ColorGraph g = edgeless(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

ColorGraph ColorGraph::from_mask(int n, unsigned mask) {
  ColorGraph g = edgeless(n);
  int bit = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++bit)
      if (mask >> bit & 1u) g.add_edge(a, b);
  return g;
}

int ColorGraph::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

void ColorGraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw std::invalid_argument("ColorGraph: color out of range");
  if (a == b) throw std::invalid_argument("ColorGraph: self-loop on color " + names_[static_cast<std::size_t>(a)]);
  adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
  adj_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
}

std::vector<std::pair<int, int>> ColorGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b)
      if (adjacent(a, b)) out.emplace_back(a, b);
  return out;
}

StringAssignment::StringAssignment(std::vector<std::string> strings, std::vector<std::string> colors,
                                   const std::vector<std::pair<int, int>>& incidence)
    : strings_(std::move(strings)),
      colors_(std::move(colors)),
      inc_(strings_.size(), std::vector<bool>(colors_.size(), false)),
      strings_of_(colors_.size()),
      colors_of_(strings_.size()) {
  for (auto [s, c] : incidence) {
    if (s < 0 || s >= string_count() || c < 0 || c >= color_count())
      throw std::invalid_argument("StringAssignment: incidence out of range");
    inc_[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = true;
  }
  for (int s = 0; s < string_count(); ++s)
    for (int c = 0; c < color_count(); ++c)
      if (incident(s, c)) {
        strings_of_[static_cast<std::size_t>(c)].push_back(s);
        colors_of_[static_cast<std::size_t>(s)].push_back(c);
      }
}

int StringAssignment::string_index(const std::string& name) const {
  auto it = std::find(strings_.begin(), strings_.end(), name);
  return it == strings_.end() ? -1 : static_cast<int>(it - strings_.begin());
}

int StringAssignment::color_index(const std::string& name) const {
  auto it = std::find(colors_.begin(), colors_.end(), name);
  return it == colors_.end() ? -1 : static_cast<int>(it - colors_.begin());
}

std::vector<std::pair<int, int>> StringAssignment::incidence() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < string_count(); ++s)
    for (int c : colors_of(s)) out.emplace_back(s, c);
  return out;
}

ColorGraph StringAssignment::derived_color_graph() const {
  ColorGraph g(colors_);
  for (int a = 0; a < color_count(); ++a)
    for (int b = a + 1; b < color_count(); ++b) {
      bool disjoint = true;
      for (int s : strings_of(a)) disjoint = disjoint && !incident(s, b);
      if (disjoint) g.add_edge(a, b);
    }
  return g;
}

StringAssignment build_string_assignment(const ColorGraph& g) {
  std::vector<std::string> strings;
  std::vector<std::pair<int, int>> incidence;
  const auto& names = g.names();
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b)
      if (!g.adjacent(a, b)) {
        int s = static_cast<int>(strings.size());
        strings.push_back("s_" + names[static_cast<std::size_t>(a)] + "_" + names[static_cast<std::size_t>(b)]);
        incidence.emplace_back(s, a);
        incidence.emplace_back(s, b);
      }
  for (int a = 0; a < g.size(); ++a) {
    bool universal = true;
    for (int b = 0; b < g.size(); ++b) universal = universal && (a == b || g.adjacent(a, b));
    if (universal) {
      incidence.emplace_back(static_cast<int>(strings.size()), a);
      strings.push_back("s_" + names[static_cast<std::size_t>(a)]);
    }
  }
  return StringAssignment(std::move(strings), names, incidence);
}

AssignmentReport validate_assignment(const ColorGraph& g, const StringAssignment& a) {
  if (g.names() != a.colors()) throw std::invalid_argument("validate_assignment: color sets differ");
  AssignmentReport report;
  for (int c = 0; c < g.size(); ++c)
    if (a.strings_of(c).empty()) report.violations.push_back({c, -1, "empty string set"});
  for (int c = 0; c < g.size(); ++c)
    for (int d = c + 1; d < g.size(); ++d) {
      bool disjoint = true;
      for (int s : a.strings_of(c)) disjoint = disjoint && !a.incident(s, d);
      if (disjoint && !g.adjacent(c, d))
        report.violations.push_back({c, d, "disjoint string sets but colors not adjacent"});
      else if (!disjoint && g.adjacent(c, d))
        report.violations.push_back({c, d, "adjacent colors share a string"});
    }
  report.valid = report.violations.empty();
  return report;
}

bool is_g_reduced(const std::vector<int>& colors, const ColorGraph& g) {
  const int k = static_cast<int>(colors.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (colors[static_cast<std::size_t>(i)] != colors[static_cast<std::size_t>(j)]) continue;
      bool blocked = false;
      for (int m = i + 1; m < j && !blocked; ++m) {
        int c = colors[static_cast<std::size_t>(m)], ci = colors[static_cast<std::size_t>(i)];
        blocked = c == ci || !g.adjacent(c, ci);
      }
      if (!blocked) return false;
    }
  return true;
}

bool is_g_reduced(const ColorWord& w, const ColorGraph& g) { return is_g_reduced(w.colors, g); }

}  // namespace trafficlab
