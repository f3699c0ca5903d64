#include "trafficlab/squared_chain.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace trafficlab {

const char* to_string(XGenerator g) {
  switch (g) {
    case XGenerator::permutation: return "permutation";
    case XGenerator::signed_permutation: return "signed-permutation";
    case XGenerator::cyclic_shift: return "cyclic-shift";
  }
  return "?";
}

const char* to_string(LambdaGenerator g) {
  switch (g) {
    case LambdaGenerator::identity: return "identity";
    case LambdaGenerator::random_sign: return "random-sign";
  }
  return "?";
}

XGenerator parse_x_generator(const std::string& name) {
  for (auto g : {XGenerator::permutation, XGenerator::signed_permutation, XGenerator::cyclic_shift})
    if (name == to_string(g)) return g;
  throw std::invalid_argument("unknown X generator '" + name + "'");
}

LambdaGenerator parse_lambda_generator(const std::string& name) {
  for (auto g : {LambdaGenerator::identity, LambdaGenerator::random_sign})
    if (name == to_string(g)) return g;
  throw std::invalid_argument("unknown Lambda generator '" + name + "'");
}

void ChainSpec::validate() const {
  if (chi.empty()) throw std::invalid_argument("chain: empty color word");
  if (chi.size() != ell.size()) throw std::invalid_argument("chain: chi and ell differ in length");
  if (color_graph.size() != assignment.color_count())
    throw std::invalid_argument("chain: color graph and assignment have different colors");
  for (int l : ell)
    if (l < 1) throw std::invalid_argument("chain: every block length must be at least 1");
  for (int c : chi)
    if (c < 0 || c >= assignment.color_count()) throw std::invalid_argument("chain: color out of range");
  if (!validate_assignment(color_graph, assignment).valid)
    throw std::invalid_argument("chain: assignment does not realize the color graph");
  if (!is_g_reduced(chi, color_graph)) throw std::invalid_argument("chain: color word is not reduced");
}

SquaredChain build_squared_chain(const ChainSpec& spec) {
  spec.validate();
  SquaredChain sc;
  sc.k = spec.k();
  sc.ell = spec.ell;
  const auto k = static_cast<std::size_t>(sc.k);
  sc.u.resize(k);
  sc.u_prime.resize(k);
  int next = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (int j = 0; j < sc.ell[i]; ++j) sc.u[i].push_back(next++);
  for (std::size_t i = 0; i < k; ++i)
    for (int j = 0; j < sc.ell[i]; ++j) sc.u_prime[i].push_back(i == 0 && j == 0 ? sc.u[0][0] : next++);
  for (std::size_t i = 0; i < k; ++i) {
    sc.u[i].push_back(sc.u[(i + 1) % k][0]);
    sc.u_prime[i].push_back(sc.u_prime[(i + 1) % k][0]);
  }
  sc.skeleton.graph.vertex_count = next;
  sc.x_edge.resize(k);
  sc.x_star_edge.resize(k);
  auto add = [&](int from, int to, int color) {
    sc.skeleton.graph.edges.emplace_back(from, to);
    sc.skeleton.edge_color.push_back(color);
    return sc.skeleton.edge_count() - 1;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < static_cast<std::size_t>(sc.ell[i]); ++j)
      sc.x_edge[i].push_back(add(sc.u[i][j + 1], sc.u[i][j], spec.chi[i]));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < static_cast<std::size_t>(sc.ell[i]); ++j)
      sc.x_star_edge[i].push_back(add(sc.u_prime[i][j], sc.u_prime[i][j + 1], spec.chi[i]));
  return sc;
}

Partition rho_subset(const SquaredChain& chain, const std::vector<int>& subset) {
  std::vector<int> label(static_cast<std::size_t>(chain.skeleton.vertex_count()));
  for (std::size_t v = 0; v < label.size(); ++v) label[v] = static_cast<int>(v);
  // Union-find over the identified pairs.
  auto find = [&](int v) {
    while (label[static_cast<std::size_t>(v)] != v) v = label[static_cast<std::size_t>(v)];
    return v;
  };
  for (int idx : subset) {
    const int i = (idx > 0 ? idx : -idx) - 1;
    if (idx == 0 || i >= chain.k) throw std::invalid_argument("rho_subset: index out of range");
    const auto& cyc = idx > 0 ? chain.u : chain.u_prime;
    const auto& row = cyc[static_cast<std::size_t>(i)];
    int a = find(row.front()), b = find(row.back());
    if (a != b) label[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  for (std::size_t v = 0; v < label.size(); ++v) label[v] = find(static_cast<int>(v));
  return Partition::from_labels(label);
}

std::vector<std::vector<int>> all_signed_subsets(int k) {
  std::vector<std::vector<int>> out;
  const unsigned total = 1u << (2 * k);
  for (unsigned mask = 0; mask < total; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (mask >> (k + i) & 1u) s.push_back(-(k - i));
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1u) s.push_back(i + 1);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<int> j_set(const SquaredChain& chain, const MultiPartition& pi) {
  if (pi.empty()) throw std::invalid_argument("j_set: no strings");
  Partition all = meet_all(pi);
  std::vector<int> out;
  for (int i = chain.k - 1; i >= 0; --i) {
    const auto& row = chain.u_prime[static_cast<std::size_t>(i)];
    if (all.same_block(row.front(), row.back())) out.push_back(-(i + 1));
  }
  for (int i = 0; i < chain.k; ++i) {
    const auto& row = chain.u[static_cast<std::size_t>(i)];
    if (all.same_block(row.front(), row.back())) out.push_back(i + 1);
  }
  return out;
}

std::vector<Permutation> sample_color_permutations(const StringAssignment& a, int n, Rng& rng) {
  std::vector<Permutation> out;
  for (int c = 0; c < a.color_count(); ++c)
    out.push_back(Permutation::sample(static_cast<int>(checked_pow(n, static_cast<Index>(a.strings_of(c).size()))), rng));
  return out;
}

}  // namespace trafficlab
