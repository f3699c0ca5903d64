#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trafficlab/color_graph.hpp"
#include "trafficlab/colored_digraph.hpp"
#include "trafficlab/sofic.hpp"
#include "trafficlab/structured_matrix.hpp"

namespace trafficlab {

/// Malformed or inconsistent input. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"colors": [...], "edges": [["a","b"], ...]}
ColorGraph color_graph_from_json(const Json& j);
Json to_json(const ColorGraph& g);

/// {"colors", "edges", "strings", "incidence": [["string","color"], ...]};
/// "edges" is the derived color graph.
StringAssignment assignment_from_json(const Json& j);
Json to_json(const StringAssignment& a);

/// {"order": n, "table": [[...]], "generators": [...]}
FiniteGroupTable group_from_json(const Json& j);
Json to_json(const FiniteGroupTable& g);

/// {"n": n, "images": [...]}
Permutation permutation_from_json(const Json& j);
Json to_json(const Permutation& p);

/// {"support": [string indices], "n": N, "entries_re": [[...]], "entries_im": [[...]]}
/// (entries_im optional, rows first).
StructuredMatrix<Complex> matrix_from_json(const Json& j);
Json to_json(const StructuredMatrix<Complex>& m);

/// A test graph with names: {"vertices": [names] or count, "edges": [[src, dst, color], ...],
/// "edge_names": [...]}. Vertices may be referred to by name or by 0-based index.
struct NamedTestGraph {
  ColoredDigraph graph;
  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;

  int vertex(const Json& ref) const;
  int edge(const std::string& name) const;
  /// "{1,2}" style rendering of a vertex set.
  std::string block_text(const std::vector<int>& vertices) const;
  Partition partition_from_json(const Json& blocks) const;
  Json to_json(const Partition& p) const;
};

NamedTestGraph test_graph_from_json(const Json& j, const StringAssignment& a);

std::string rational_text(const Rational& r);

}  // namespace trafficlab
