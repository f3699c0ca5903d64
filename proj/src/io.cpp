#include "trafficlab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace trafficlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> name_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError(std::string(what) + " must contain strings");
    if (!seen.insert(x.get<std::string>()).second) throw InputError(std::string("duplicate name in ") + what + ": " + x.get<std::string>());
    out.push_back(x.get<std::string>());
  }
  return out;
}

int lookup(const std::vector<std::string>& names, const Json& ref, const char* what) {
  if (ref.is_string()) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == ref.get<std::string>()) return static_cast<int>(i);
    throw InputError(std::string("unknown ") + what + " '" + ref.get<std::string>() + "'");
  }
  if (ref.is_number_integer()) {
    const auto i = ref.get<long long>();
    if (i < 0 || i >= static_cast<long long>(names.size())) throw InputError(std::string(what) + " index out of range");
    return static_cast<int>(i);
  }
  throw InputError(std::string(what) + " reference must be a name or an index");
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

ColorGraph color_graph_from_json(const Json& j) {
  ColorGraph g(name_list(field(j, "colors"), "colors"));
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw InputError("edges must be an array");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("a color graph edge must be a pair");
      const int a = lookup(g.names(), e[0], "color"), b = lookup(g.names(), e[1], "color");
      if (a == b) throw InputError("color graph has a self-loop on " + g.names()[static_cast<std::size_t>(a)]);
      g.add_edge(a, b);
    }
  }
  return g;
}

Json to_json(const ColorGraph& g) {
  Json j;
  j["colors"] = g.names();
  j["edges"] = Json::array();
  for (auto [a, b] : g.edges())
    j["edges"].push_back({g.names()[static_cast<std::size_t>(a)], g.names()[static_cast<std::size_t>(b)]});
  return j;
}

StringAssignment assignment_from_json(const Json& j) {
  auto colors = name_list(field(j, "colors"), "colors");
  auto strings = name_list(field(j, "strings"), "strings");
  std::vector<std::pair<int, int>> inc;
  const Json& list = field(j, "incidence");
  if (!list.is_array()) throw InputError("incidence must be an array");
  for (const auto& p : list) {
    if (!p.is_array() || p.size() != 2) throw InputError("an incidence entry must be [string, color]");
    inc.emplace_back(lookup(strings, p[0], "string"), lookup(colors, p[1], "color"));
  }
  StringAssignment a(strings, colors, inc);
  if (j.contains("edges")) {
    ColorGraph stated = color_graph_from_json(j);
    AssignmentReport r = validate_assignment(stated, a);
    if (!r.valid) {
      const auto& v = r.violations.front();
      throw InputError("assignment does not realize its color graph: " + v.reason);
    }
  }
  return a;
}

Json to_json(const StringAssignment& a) {
  Json j = to_json(a.derived_color_graph());
  j["strings"] = a.strings();
  j["incidence"] = Json::array();
  for (auto [s, c] : a.incidence())
    j["incidence"].push_back({a.strings()[static_cast<std::size_t>(s)], a.colors()[static_cast<std::size_t>(c)]});
  return j;
}

FiniteGroupTable group_from_json(const Json& j) {
  const int order = int_field(j, "order");
  const Json& t = field(j, "table");
  if (!t.is_array() || static_cast<int>(t.size()) != order) throw InputError("group table must have 'order' rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : t) {
    if (!row.is_array() || static_cast<int>(row.size()) != order) throw InputError("group table rows must have 'order' entries");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw InputError("group table entries must be integers");
      r.push_back(x.get<int>());
    }
    table.push_back(std::move(r));
  }
  std::vector<int> gens;
  for (const auto& x : field(j, "generators")) {
    if (!x.is_number_integer()) throw InputError("generators must be element indices");
    gens.push_back(x.get<int>());
  }
  try {
    return FiniteGroupTable(std::move(table), std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json to_json(const FiniteGroupTable& g) {
  Json j;
  j["order"] = g.order();
  j["table"] = g.table();
  j["generators"] = g.generators();
  return j;
}

Permutation permutation_from_json(const Json& j) {
  const int n = int_field(j, "n");
  std::vector<int> images;
  for (const auto& x : field(j, "images")) {
    if (!x.is_number_integer()) throw InputError("permutation images must be integers");
    images.push_back(x.get<int>());
  }
  if (static_cast<int>(images.size()) != n) throw InputError("permutation has the wrong number of images");
  try {
    return Permutation(std::move(images));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json to_json(const Permutation& p) {
  Json j;
  j["n"] = p.size();
  j["images"] = p.images();
  return j;
}

StructuredMatrix<Complex> matrix_from_json(const Json& j) {
  StructuredMatrix<Complex> m;
  for (const auto& s : field(j, "support")) {
    if (!s.is_number_integer()) throw InputError("support must list string indices");
    m.support.push_back(s.get<int>());
  }
  if (!std::is_sorted(m.support.begin(), m.support.end()) ||
      std::adjacent_find(m.support.begin(), m.support.end()) != m.support.end())
    throw InputError("support must be strictly ascending");
  m.n = int_field(j, "n");
  if (m.n < 1) throw InputError("matrix side N must be positive");
  const Index dim = checked_pow(m.n, static_cast<Index>(m.support.size()));
  auto read = [&](const Json& rows, bool imag) {
    if (!rows.is_array() || static_cast<Index>(rows.size()) != dim) throw InputError("matrix must have N^#support rows");
    for (Index r = 0; r < dim; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != dim) throw InputError("matrix rows must have N^#support entries");
      for (Index c = 0; c < dim; ++c) {
        const Json& x = row[static_cast<std::size_t>(c)];
        if (!x.is_number()) throw InputError("matrix entries must be numbers");
        if (imag)
          m.entries(r, c).imag(x.get<double>());
        else
          m.entries(r, c) = Complex(x.get<double>(), 0);
      }
    }
  };
  m.entries = Matrix<Complex>::Zero(dim, dim);
  read(field(j, "entries_re"), false);
  if (j.contains("entries_im")) read(j.at("entries_im"), true);
  return m;
}

Json to_json(const StructuredMatrix<Complex>& m) {
  Json j;
  j["support"] = m.support;
  j["n"] = m.n;
  Json re = Json::array(), im = Json::array();
  for (Index r = 0; r < m.entries.rows(); ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (Index c = 0; c < m.entries.cols(); ++c) {
      rr.push_back(m.entries(r, c).real());
      ii.push_back(m.entries(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  j["entries_re"] = std::move(re);
  j["entries_im"] = std::move(im);
  return j;
}

int NamedTestGraph::vertex(const Json& ref) const { return lookup(vertex_names, ref, "vertex"); }

int NamedTestGraph::edge(const std::string& name) const { return lookup(edge_names, Json(name), "edge"); }

std::string NamedTestGraph::block_text(const std::vector<int>& vertices) const {
  std::string s = "{";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) s += ",";
    s += vertex_names[static_cast<std::size_t>(vertices[i])];
  }
  return s + "}";
}

Partition NamedTestGraph::partition_from_json(const Json& blocks) const {
  if (!blocks.is_array()) throw InputError("a partition must be an array of blocks");
  std::vector<std::vector<int>> bs;
  for (const auto& b : blocks) {
    if (!b.is_array()) throw InputError("a partition block must be an array of vertices");
    std::vector<int> block;
    for (const auto& v : b) block.push_back(vertex(v));
    bs.push_back(std::move(block));
  }
  try {
    return Partition::from_blocks(graph.vertex_count(), bs);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid partition: ") + e.what());
  }
}

Json NamedTestGraph::to_json(const Partition& p) const {
  Json out = Json::array();
  for (const auto& b : p.blocks()) {
    Json block = Json::array();
    for (int v : b) block.push_back(vertex_names[static_cast<std::size_t>(v)]);
    out.push_back(std::move(block));
  }
  return out;
}

NamedTestGraph test_graph_from_json(const Json& j, const StringAssignment& a) {
  NamedTestGraph t;
  const Json& vs = field(j, "vertices");
  if (vs.is_number_integer()) {
    const int n = vs.get<int>();
    if (n < 1) throw InputError("a test graph needs at least one vertex");
    for (int v = 0; v < n; ++v) t.vertex_names.push_back(std::to_string(v));
  } else {
    t.vertex_names = name_list(vs, "vertices");
    if (t.vertex_names.empty()) throw InputError("a test graph needs at least one vertex");
  }
  t.graph.graph.vertex_count = static_cast<int>(t.vertex_names.size());
  const Json& es = field(j, "edges");
  if (!es.is_array()) throw InputError("edges must be an array");
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 3) throw InputError("a test graph edge must be [src, dst, color]");
    t.graph.graph.edges.emplace_back(t.vertex(e[0]), t.vertex(e[1]));
    t.graph.edge_color.push_back(lookup(a.colors(), e[2], "color"));
  }
  if (j.contains("edge_names")) {
    t.edge_names = name_list(j.at("edge_names"), "edge_names");
    if (t.edge_names.size() != es.size()) throw InputError("edge_names must name every edge");
  } else {
    for (std::size_t e = 0; e < es.size(); ++e) t.edge_names.push_back("e" + std::to_string(e));
  }
  return t;
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

}  // namespace trafficlab
