#include "trafficlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "trafficlab/experiments.hpp"
#include "trafficlab/io.hpp"
#include "trafficlab/lemma_checks.hpp"
#include "trafficlab/sofic.hpp"
#include "trafficlab/traffic.hpp"

namespace trafficlab::cli {

namespace {

/// An invariant failed; the report (if any) has been written.
struct InvariantFailure : std::runtime_error {
  std::string reason;
  InvariantFailure(std::string r, const std::string& detail) : std::runtime_error(detail), reason(std::move(r)) {}
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = ".";
  int workers = 1;
  Guards guards;

  std::uint64_t seed_for(const Json& config) const {
    if (seed) return *seed;
    if (!config.contains("seed")) return 0;
    if (!config.at("seed").is_number_unsigned()) throw InputError("seed must be an unsigned integer");
    return config.at("seed").get<std::uint64_t>();
  }
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

std::string number_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

// ---------------------------------------------------------------------------
// string-assign

int cmd_string_assign(const std::string& path, const Common& opt, std::ostream& out) {
  const ColorGraph g = color_graph_from_json(read_json_file(path));
  const StringAssignment a = build_string_assignment(g);
  const AssignmentReport report = validate_assignment(g, a);
  if (!report.valid) throw InvariantFailure("assignment-invalid", report.violations.front().reason);
  const auto file = opt.out / "assignment.json";
  write_text_file(file, dump(to_json(a)));
  out << "wrote " << file.string() << "\n";
  return ok;
}

// ---------------------------------------------------------------------------
// traffic-check

struct Fixture {
  Json raw;
  StringAssignment a;
  NamedTestGraph t;
  ColoredDigraph sk;
  MultiPartition rho;

  int string_of(const Json& ref) const {
    if (!ref.is_string()) throw InputError("strings are referred to by name");
    const int s = a.string_index(ref.get<std::string>());
    if (s < 0) throw InputError("unknown string '" + ref.get<std::string>() + "'");
    return s;
  }
  int color_of(const Json& ref) const {
    if (!ref.is_string()) throw InputError("colors are referred to by name");
    const int c = a.color_index(ref.get<std::string>());
    if (c < 0) throw InputError("unknown color '" + ref.get<std::string>() + "'");
    return c;
  }
  /// "rho" or {"string": [[vertices], ...], ...} naming every string.
  MultiPartition pi(const Json& spec) const {
    if (spec.is_string() && spec.get<std::string>() == "rho") return rho;
    if (!spec.is_object()) throw InputError("pi must be \"rho\" or an object keyed by string");
    MultiPartition p(static_cast<std::size_t>(a.string_count()));
    std::vector<char> seen(p.size(), 0);
    for (const auto& [name, blocks] : spec.items()) {
      const int s = string_of(Json(name));
      p[static_cast<std::size_t>(s)] = t.partition_from_json(blocks);
      seen[static_cast<std::size_t>(s)] = 1;
    }
    if (std::count(seen.begin(), seen.end(), 0)) throw InputError("pi must give a partition for every string");
    return p;
  }
  Json names(const Partition& p) const { return t.to_json(p); }
  std::string edge_list(const std::vector<int>& ids) const {
    std::string s;
    for (int e : ids) s += (s.empty() ? "" : ",") + t.edge_names[static_cast<std::size_t>(e)];
    return s;
  }
};

struct Check {
  std::string name;
  std::string reason;  // failure token
  bool pass = true;
  Json detail = Json::object();
};

Check check_rho(const Fixture& f) {
  Check c{"rho-values", "fixture-rho"};
  const Json expected_rho = f.raw.at("expect").value("rho", Json::object());
  for (const auto& [name, blocks] : expected_rho.items()) {
    const int s = f.string_of(Json(name));
    const Partition expected = f.t.partition_from_json(blocks);
    const Partition& got = f.rho[static_cast<std::size_t>(s)];
    c.detail[name] = {{"computed", f.names(got)}, {"match", got == expected}};
    c.pass = c.pass && got == expected;
  }
  return c;
}

Check check_quotients(const Fixture& f) {
  Check c{"color-quotients", "fixture-quotient"};
  c.detail = Json::array();
  for (const auto& q : f.raw.at("expect").value("quotients", Json::array())) {
    const MultiPartition pi = f.pi(require(q, "pi"));
    const int color = f.color_of(require(q, "color"));
    const ColorQuotient got = t_pi_c(f.sk, pi, f.a, color);
    const Partition vertices = f.t.partition_from_json(require(q, "vertices"));
    std::vector<int> expected_edges;
    for (const auto& e : require(q, "edges")) {
      if (!e.is_string()) throw InputError("quotient edges are referred to by name");
      expected_edges.push_back(f.t.edge(e.get<std::string>()));
    }
    std::vector<int> got_edges = got.edge_ids;
    std::sort(expected_edges.begin(), expected_edges.end());
    std::sort(got_edges.begin(), got_edges.end());
    const bool match = got.omega == vertices && got_edges == expected_edges;
    c.detail.push_back({{"color", q.at("color")},
                        {"vertices", f.names(got.omega)},
                        {"edges", f.edge_list(got.edge_ids)},
                        {"components", got.component_count()},
                        {"match", match}});
    c.pass = c.pass && match;
  }
  return c;
}

Check check_gcc_trees(const Fixture& f) {
  Check c{"gcc-trees", "gcc-tree"};
  c.detail = Json::array();
  for (const auto& q : f.raw.at("expect").value("gcc_trees", Json::array())) {
    const MultiPartition pi = f.pi(require(q, "pi"));
    Json row = Json::object();
    for (const auto& [name, want] : require(q, "trees").items()) {
      if (!want.is_boolean()) throw InputError("gcc tree expectations must be booleans");
      const bool got = is_tree(gcc(f.sk, pi, f.a, f.string_of(Json(name))).graph);
      row[name] = {{"tree", got}, {"match", got == want.get<bool>()}};
      c.pass = c.pass && got == want.get<bool>();
    }
    c.detail.push_back(std::move(row));
  }
  return c;
}

/// Left vertices print as their π_s block, right vertices as "color:" and the
/// union of their component's ω blocks.
std::string gcc_vertex_text(const Fixture& f, const MultiPartition& pi, const GccGraph& g, int v) {
  const int s = g.string;
  if (v < g.left_count) return f.t.block_text(pi[static_cast<std::size_t>(s)].blocks()[static_cast<std::size_t>(v)]);
  const auto& r = g.right[static_cast<std::size_t>(v - g.left_count)];
  const ColorQuotient& q = g.quotient(r.color);
  std::vector<int> members;
  for (int x = 0; x < f.t.graph.vertex_count(); ++x)
    if (q.components.block_of(q.omega.block_of(x)) == r.component) members.push_back(x);
  return f.a.colors()[static_cast<std::size_t>(r.color)] + ":" + f.t.block_text(members);
}

Check check_walks(const Fixture& f) {
  Check c{"induced-walks", "induced-walk"};
  c.detail = Json::array();
  for (const auto& q : f.raw.at("expect").value("walks", Json::array())) {
    const MultiPartition pi = f.pi(require(q, "pi"));
    const int s = f.string_of(require(q, "string"));
    std::vector<int> edges;
    for (const auto& e : require(q, "edges")) {
      if (!e.is_string()) throw InputError("walk edges are referred to by name");
      edges.push_back(f.t.edge(e.get<std::string>()));
    }
    const GccGraph g = gcc(f.sk, pi, f.a, s);
    Json got = Json::array();
    bool match;
    try {
      for (int v : induced_gcc_walk(f.sk, pi, f.a, s, edges).vertices) got.push_back(gcc_vertex_text(f, pi, g, v));
      match = got == require(q, "walk");
    } catch (const std::invalid_argument& e) {
      got = std::string("no induced walk: ") + e.what();
      match = false;
    }
    c.detail.push_back({{"string", q.at("string")}, {"walk", got}, {"match", match}});
    c.pass = c.pass && match;
  }
  return c;
}

/// Claimed exponent cases, each checked against the computation and against
/// the bound: exponent ≤ 0 with equality exactly when every GCC is a tree.
Check check_exponent_cases(const Fixture& f) {
  Check c{"exponent-cases", "exponent-bound"};
  c.detail = Json::array();
  for (const auto& q : f.raw.at("expect").value("exponent", Json::array())) {
    const MultiPartition pi = f.pi(require(q, "pi"));
    if (!admissible(f.sk, f.a, pi)) throw InputError("exponent case with a non-admissible pi");
    const ExponentReport e = growth_exponent(f.sk, pi, f.a);
    const bool zero = e.total == 0, trees = all_gcc_trees(f.sk, pi, f.a);
    const bool bound = e.total <= 0 && zero == trees;
    const bool claim_zero = require(q, "exponent_zero").get<bool>();
    const bool claim_trees = require(q, "all_trees").get<bool>();
    const bool match = bound && zero == claim_zero && trees == claim_trees;
    Json per = Json::array();
    for (const auto& x : e.per_string) per.push_back(rational_text(x));
    c.detail.push_back({{"exponent", rational_text(e.total)},
                        {"per_string", per},
                        {"all_trees", trees},
                        {"claimed_exponent_zero", claim_zero},
                        {"claimed_all_trees", claim_trees},
                        {"bound_holds", bound},
                        {"match", match}});
    c.pass = c.pass && match;
  }
  return c;
}

Check check_kernel(const Fixture& f, int n, std::uint64_t seed, const Guards& guards) {
  Check c{"kernel-decomposition", "kernel-decomposition"};
  const int draws = get_or<int>(f.raw.value("kernel", Json::object()), "draws", 3);
  if (weak_components(f.sk.graph).block_count() != 1) {
    c.detail["skipped"] = "test graph is not connected";
    return c;
  }
  c.detail["n"] = n;
  c.detail["draws"] = Json::array();
  for (int d = 0; d < draws; ++d) {
    Rng rng = derive_rng(seed, {0x6b65726eULL, static_cast<std::uint64_t>(d)});
    const TestGraph<long long> t = random_integer_test_graph(f.sk, f.a, n, rng, true);
    const std::vector<Permutation> sigmas = sample_color_permutations(f.a, n, rng);
    const KernelDecomposition<long long> r = kernel_decomposition(t, f.a, sigmas, n, guards);
    c.detail["draws"].push_back({{"trace", rational_text(r.trace)},
                                 {"admissible_sum", rational_text(r.admissible_sum)},
                                 {"admissible_terms", r.admissible_terms},
                                 {"kernel_classes", r.kernel_classes},
                                 {"off_admissible", r.off_admissible},
                                 {"bucket_mismatches", r.bucket_mismatches},
                                 {"holds", r.holds()}});
    c.pass = c.pass && r.holds();
  }
  return c;
}

Check check_exponent_graph(const Fixture& f, const Guards& guards) {
  Check c{"exponent-bound-fixture-graph", "exponent-bound"};
  if (!is_two_edge_connected(f.sk.graph)) {
    c.detail["skipped"] = "test graph is not two-edge-connected";
    return c;
  }
  const ExponentGraphResult r = check_exponent_bound(f.sk, f.a, guards);
  c.detail["configurations"] = r.configurations;
  c.detail["violations"] = r.violations;
  c.pass = r.violations.empty();
  return c;
}

Check check_sweep(const Fixture& f, const Guards& guards) {
  Check c{"exponent-bound-sweep", "exponent-bound"};
  const Json cfg = f.raw.value("sweep", Json::object());
  const int max_v = get_or<int>(cfg, "max_vertices", 4), max_e = get_or<int>(cfg, "max_edges", 5);
  if (max_v < 1 || max_e < 0) throw InputError("sweep sizes must be positive");
  const ExponentSweepReport r = exponent_bound_sweep(f.a, max_v, max_e, guards);
  c.detail = {{"max_vertices", max_v},
              {"max_edges", max_e},
              {"graphs", r.graphs},
              {"colored_graphs", r.colored_graphs},
              {"configurations", r.configurations},
              {"full_enumerations", r.full_enumerations},
              {"violations", r.violations},
              {"examples", r.examples}};
  c.pass = r.violations == 0;
  return c;
}

Check check_chains(const Fixture& f, const Guards& guards) {
  Check c{"chain-inconsistency", "chain-inconsistency"};
  const int max_length = get_or<int>(f.raw.value("chains", Json::object()), "max_length", 3);
  std::int64_t specs = 0, hits = 0, control = 0;
  Json examples = Json::array();
  for (const ChainSpec& spec : chain_specs_for(f.a, max_length)) {
    ++specs;
    const auto found = inconsistency_search(spec, true, guards);
    hits += static_cast<std::int64_t>(found.size());
    if (!found.empty() && examples.size() < 5) examples.push_back(describe(spec));
    control += static_cast<std::int64_t>(inconsistency_search(spec, false, guards).size());
  }
  c.detail = {{"max_length", max_length}, {"specs", specs}, {"hits", hits}, {"control_hits", control}, {"examples", examples}};
  c.pass = hits == 0;
  return c;
}

int cmd_traffic_check(const std::string& path, std::optional<int> n_flag, const Common& opt, std::ostream& out) {
  Fixture f;
  f.raw = read_json_file(path);
  f.a = assignment_from_json(require(f.raw, "assignment"));
  f.t = test_graph_from_json(require(f.raw, "graph"), f.a);
  f.sk = f.t.graph;
  f.rho = rho_all(f.sk, f.a);
  if (!f.raw.contains("expect")) f.raw["expect"] = Json::object();
  const int n = n_flag ? *n_flag : get_or<int>(f.raw, "n", 2);
  if (n < 1) throw InputError("N must be positive");
  const std::uint64_t seed = opt.seed_for(f.raw);

  std::vector<Check> checks;
  try {
    checks.push_back(check_rho(f));
    checks.push_back(check_quotients(f));
    checks.push_back(check_gcc_trees(f));
    checks.push_back(check_walks(f));
    checks.push_back(check_exponent_cases(f));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("fixture expectation cannot be evaluated: ") + e.what());
  }
  checks.push_back(check_kernel(f, n, seed, opt.guards));
  checks.push_back(check_exponent_graph(f, opt.guards));
  checks.push_back(check_sweep(f, opt.guards));
  checks.push_back(check_chains(f, opt.guards));

  Json report;
  report["fixture"] = f.raw.value("name", std::filesystem::path(path).stem().string());
  report["n"] = n;
  report["seed"] = seed;
  report["checks"] = Json::array();
  const Check* failed = nullptr;
  for (const auto& c : checks) {
    report["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    if (!c.pass && !failed) failed = &c;
  }
  report["pass"] = failed == nullptr;
  const auto file = opt.out / "report.json";
  write_text_file(file, dump(report));
  if (failed) throw InvariantFailure(failed->reason, "check " + failed->name + " failed; see " + file.string());
  out << "wrote " << file.string() << "\n";
  return ok;
}

// ---------------------------------------------------------------------------
// converge

ChainSpec chain_spec_from_json(const Json& j) {
  ChainSpec spec;
  if (j.contains("assignment")) {
    spec.assignment = assignment_from_json(j.at("assignment"));
    spec.color_graph = j.contains("color_graph") ? color_graph_from_json(j.at("color_graph"))
                                                 : spec.assignment.derived_color_graph();
  } else {
    spec.color_graph = color_graph_from_json(require(j, "color_graph"));
    spec.assignment = build_string_assignment(spec.color_graph);
  }
  for (const auto& c : require(j, "chi")) {
    const int idx = c.is_string() ? spec.assignment.color_index(c.get<std::string>()) : -1;
    if (idx < 0) throw InputError("chi must list color names");
    spec.chi.push_back(idx);
  }
  for (const auto& l : require(j, "ell")) {
    if (!l.is_number_integer()) throw InputError("ell must list integers");
    spec.ell.push_back(l.get<int>());
  }
  try {
    spec.x_generator = parse_x_generator(get_or<std::string>(j, "x_generator", "permutation"));
    spec.lambda_generator = parse_lambda_generator(get_or<std::string>(j, "lambda_generator", "identity"));
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return spec;
}

int cmd_converge(const std::string& path, const Common& opt, std::ostream& out) {
  const Json config = read_json_file(path);
  const ChainSpec spec = chain_spec_from_json(config);
  const auto ns = get_or<std::vector<int>>(config, "ns", {4, 8, 16, 32});
  const int samples = get_or<int>(config, "samples", 200);
  const auto band = get_or<std::vector<double>>(config, "slope_band", {-1.6, -0.6});
  if (ns.empty() || std::any_of(ns.begin(), ns.end(), [](int x) { return x < 1; }))
    throw InputError("ns must list positive sizes");
  if (samples < 2) throw InputError("samples must be at least 2");
  if (band.size() != 2 || band[0] > band[1]) throw InputError("slope_band must be [low, high]");
  const std::uint64_t seed = opt.seed_for(config);

  const ConvergenceReport r = convergence_run(spec, ns, samples, seed, opt.workers, opt.guards);
  std::string csv = "N,mean,stderr,variance,samples\n";
  for (const auto& p : r.points)
    csv += std::to_string(p.n) + "," + number_text(p.mean) + "," + number_text(p.stderr_mean) + "," +
           number_text(p.variance) + "," + std::to_string(p.samples) + "\n";
  const bool in_band = std::isfinite(r.slope) && r.slope >= band[0] && r.slope <= band[1];
  Json summary;
  summary["spec"] = describe(spec);
  summary["x_generator"] = to_string(spec.x_generator);
  summary["lambda_generator"] = to_string(spec.lambda_generator);
  summary["seed"] = seed;
  summary["samples"] = samples;
  summary["ns"] = ns;
  summary["means"] = Json::array();
  for (const auto& p : r.points) summary["means"].push_back(p.mean);
  summary["slope"] = r.slope;
  summary["band"] = band;
  summary["slope_in_band"] = in_band;
  summary["nonincreasing"] = r.nonincreasing;
  summary["verdict"] = in_band && r.nonincreasing ? "pass" : "fail";
  write_text_file(opt.out / "results.csv", csv);
  write_text_file(opt.out / "summary.json", dump(summary));
  if (!in_band) throw InvariantFailure("slope-out-of-band", "slope " + number_text(r.slope) + " outside band");
  if (!r.nonincreasing) throw InvariantFailure("means-not-nonincreasing", "means increase beyond 2 stderr");
  out << "wrote " << (opt.out / "results.csv").string() << " " << (opt.out / "summary.json").string() << "\n";
  return ok;
}

// ---------------------------------------------------------------------------
// sofic-certify

VertexGroup vertex_group_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "Z") throw InputError("a group is a table object or \"Z\"");
    return VertexGroup::integers();
  }
  return VertexGroup::of(group_from_json(j));
}

int cmd_sofic_certify(const std::string& path, const Common& opt, std::ostream& out) {
  const Json config = read_json_file(path);
  const std::uint64_t seed = opt.seed_for(config);
  const int max_length = get_or<int>(config, "max_length", 4);
  const double threshold = get_or<double>(config, "threshold", 0.0);
  if (max_length < 0) throw InputError("max_length must be nonnegative");

  ColorGraph graph;
  std::vector<VertexGroup> groups;
  GeneratorRep rep;
  try {
    if (config.contains("graph")) {
      graph = color_graph_from_json(config.at("graph"));
      const StringAssignment a =
          config.contains("assignment") ? assignment_from_json(config.at("assignment")) : build_string_assignment(graph);
      if (a.colors() != graph.names()) throw InputError("assignment colors differ from the graph colors");
      const int n = require(config, "n").get<int>();
      if (n < 1) throw InputError("n must be positive");
      const Json& gs = require(config, "groups");
      std::vector<GeneratorRep> reps;
      for (int c = 0; c < graph.size(); ++c) {
        const std::string& name = graph.names()[static_cast<std::size_t>(c)];
        if (!gs.contains(name)) throw InputError("no group for color " + name);
        groups.push_back(vertex_group_from_json(gs.at(name)));
        const int m = static_cast<int>(checked_pow(n, static_cast<Index>(a.strings_of(c).size())));
        reps.push_back(groups.back().finite ? left_regular_rep(*groups.back().finite) : cyclic_shift_rep(m));
      }
      rep = get_or<bool>(config, "pad", true) ? graph_product_rep_padded(graph, a, reps, n, seed)
                                               : graph_product_rep(graph, a, reps, n, seed);
    } else {
      graph = ColorGraph({"g"});
      groups.push_back(vertex_group_from_json(require(config, "group")));
      if (groups.back().finite) {
        rep = left_regular_rep(*groups.back().finite);
        const int n = get_or<int>(config, "n", rep.side);
        if (n != rep.side) rep = pad_rep(rep, n);
      } else {
        rep = cyclic_shift_rep(require(config, "n").get<int>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  std::vector<std::vector<WordLetter>> words;
  if (config.contains("words")) {
    for (const auto& w : config.at("words")) {
      if (!w.is_string()) throw InputError("words must be strings");
      try {
        words.push_back(parse_word(rep, w.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }
  } else {
    words = all_words(static_cast<int>(rep.generators.size()), max_length);
  }
  std::vector<bool> truth;
  for (const auto& w : words) truth.push_back(rep_word_trivial(rep, graph, groups, w));
  const SoficCertificate cert = certify(rep, words, truth);
  const auto defects = rep.provenance == RepKind::graph_product ? commutation_defects(rep, graph)
                                                                : std::vector<CommutationDefect>{};

  Json j;
  j["representation"] = to_string(rep.provenance);
  j["side"] = rep.side;
  j["strings"] = rep.strings;
  j["dimension"] = rep.dimension();
  j["generators"] = rep.names;
  j["seed"] = seed;
  j["threshold"] = threshold;
  j["max_deviation"] = rational_text(cert.max_deviation);
  j["commutation_defects"] = Json::array();
  for (const auto& d : defects)
    j["commutation_defects"].push_back({{"first", rep.names[static_cast<std::size_t>(d.first)]},
                                        {"second", rep.names[static_cast<std::size_t>(d.second)]},
                                        {"distance", rational_text(d.distance)}});
  j["words"] = Json::array();
  std::string csv = "word,truth,trace_num,trace_den,deviation\n";
  for (const auto& e : cert.entries) {
    j["words"].push_back(
        {{"word", e.text}, {"trivial", e.trivial}, {"trace", rational_text(e.trace)}, {"deviation", rational_text(e.deviation)}});
    csv += e.text + "," + (e.trivial ? "1" : "0") + "," + numerator(e.trace).str() + "," + denominator(e.trace).str() +
           "," + rational_text(e.deviation) + "\n";
  }
  const bool pass = static_cast<double>(cert.max_deviation) <= threshold && defects.empty();
  j["pass"] = pass;
  write_text_file(opt.out / "certificate.json", dump(j));
  write_text_file(opt.out / "certificate.csv", csv);
  if (!defects.empty()) throw InvariantFailure("commutation-defect", "adjacent generators do not commute");
  if (!pass)
    throw InvariantFailure("sofic-deviation",
                           "max deviation " + rational_text(cert.max_deviation) + " exceeds threshold " + number_text(threshold));
  out << "wrote " << (opt.out / "certificate.json").string() << " " << (opt.out / "certificate.csv").string() << "\n";
  return ok;
}

int fail(std::ostream& err, const std::string& reason, int code, const std::string& detail) {
  err << "trafficlab: error reason=" << reason << " exit=" << code << ": " << one_line(detail) << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traffic distributions, graph products and sofic certificates", "trafficlab"};
  app.require_subcommand(1);
  Common opt;
  const unsigned hw = std::thread::hardware_concurrency();
  opt.workers = hw ? static_cast<int>(hw) : 1;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config seed)");
  app.add_option("--out", opt.out, "output directory")->capture_default_str();
  app.add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--guard-maps", opt.guards.max_maps, "budget for enumerated vertex maps")->check(CLI::PositiveNumber);
  app.add_option("--guard-partitions", opt.guards.max_partition_tuples, "budget for enumerated partition tuples")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string input;
  std::optional<int> n;
  auto* sa = app.add_subcommand("string-assign", "color graph JSON -> assignment.json");
  sa->add_option("graph", input, "color graph JSON")->required();
  auto* tc = app.add_subcommand("traffic-check", "run the lemma suites on a fixture -> report.json");
  tc->add_option("fixture", input, "fixture JSON")->required();
  tc->add_option("--n", n, "matrix side N for the kernel decomposition");
  auto* cv = app.add_subcommand("converge", "convergence run -> results.csv, summary.json");
  cv->add_option("config", input, "config JSON")->required();
  auto* sc = app.add_subcommand("sofic-certify", "word trace certificate -> certificate.json, certificate.csv");
  sc->add_option("config", input, "config JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", input_error, e.what());
  }
  if (seed_opt->count()) opt.seed = seed;

  try {
    if (*sa) return cmd_string_assign(input, opt, out);
    if (*tc) return cmd_traffic_check(input, n, opt, out);
    if (*cv) return cmd_converge(input, opt, out);
    if (*sc) return cmd_sofic_certify(input, opt, out);
  } catch (const InvariantFailure& e) {
    return fail(err, e.reason, invariant_failure, e.what());
  } catch (const GuardError& e) {
    return fail(err, e.guard(), guard_breach, e.what());
  } catch (const InputError& e) {
    return fail(err, "input", input_error, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(err, "input", input_error, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(err, "input", input_error, e.what());
  } catch (const std::overflow_error& e) {
    return fail(err, "guard-size", guard_breach, e.what());
  } catch (const std::exception& e) {
    return fail(err, "internal", invariant_failure, e.what());
  }
  return fail(err, "usage", input_error, "no subcommand");
}

}  // namespace trafficlab::cli
