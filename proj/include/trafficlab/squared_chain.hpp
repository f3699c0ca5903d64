#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trafficlab/color_graph.hpp"
#include "trafficlab/colored_digraph.hpp"
#include "trafficlab/rng.hpp"
#include "trafficlab/traffic.hpp"

namespace trafficlab {

enum class XGenerator {
  permutation,         // uniform random permutation matrix
  signed_permutation,  // random permutation with random ±1 entries
  cyclic_shift,        // the N^{#S_c}-cycle, trace zero
};

enum class LambdaGenerator {
  identity,
  random_sign,  // diagonal of random ±1
};

const char* to_string(XGenerator g);
const char* to_string(LambdaGenerator g);
XGenerator parse_x_generator(const std::string& name);
LambdaGenerator parse_lambda_generator(const std::string& name);

/// Data of a centered chain (Y_1 - ΔY_1) ⋯ (Y_k - ΔY_k), with
/// Y_i = Λ_{i,1} X_{i,1} ⋯ Λ_{i,ℓ(i)} X_{i,ℓ(i)} and X_{i,j} of color χ(i).
struct ChainSpec {
  ColorGraph color_graph;
  StringAssignment assignment;
  std::vector<int> chi;
  std::vector<int> ell;
  XGenerator x_generator = XGenerator::permutation;
  LambdaGenerator lambda_generator = LambdaGenerator::identity;

  int k() const { return static_cast<int>(chi.size()); }
  /// Throws std::invalid_argument unless the spec is usable: lengths agree,
  /// ℓ ≥ 1, colors in range, the assignment is valid for the color graph and
  /// χ is reduced.
  void validate() const;
};

/// Two cycles glued at one vertex: the unprimed cycle B_1 … B_k carries the
/// edges X_{i,j}: u_{i,j+1} → u_{i,j}, the primed cycle the adjoint edges
/// X*_{i,j}: u'_{i,j} → u'_{i,j+1}, with u_{i,ℓ(i)+1} = u_{i+1,1} cyclically
/// (likewise primed) and u_{1,1} = u'_{1,1}. 2Σℓ - 1 vertices.
struct SquaredChain {
  ColoredDigraph skeleton;
  int k = 0;
  std::vector<int> ell;
  // u[i][j] is the vertex u_{i+1,j+1}, j = 0..ℓ(i); same for u_prime.
  std::vector<std::vector<int>> u, u_prime;
  // x_edge[i][j] is the edge of X_{i+1,j+1}; x_star_edge for its adjoint.
  std::vector<std::vector<int>> x_edge, x_star_edge;
};

SquaredChain build_squared_chain(const ChainSpec& spec);

/// Signed index ±(i+1) for i in 0..k-1, as used by subsets I and J.
/// ρ_I identifies u_{i,1} with u_{i,ℓ(i)+1} for i ∈ I (primed when negative).
Partition rho_subset(const SquaredChain& chain, const std::vector<int>& subset);
/// Every I ⊆ {±1, …, ±k} as a sorted list of signed indices.
std::vector<std::vector<int>> all_signed_subsets(int k);

/// J_π: i ∈ J iff u_{i,1} ~ u_{i+1,1} under the meet of all π_s, -i iff the
/// primed pair is identified.
std::vector<int> j_set(const SquaredChain& chain, const MultiPartition& pi);

/// One draw of the matrices X_{i,j} (on [N]^{S_χ(i)}) and Λ_{i,j} (full space).
template <typename Scalar>
struct ChainMatrices {
  std::vector<std::vector<Matrix<Scalar>>> x;
  std::vector<std::vector<Vector<Scalar>>> lambda;
  std::vector<std::vector<Permutation>> x_permutation;  // filled for unsigned permutation generators
};

template <typename Scalar>
ChainMatrices<Scalar> generate_chain_matrices(const ChainSpec& spec, int n, Rng& rng) {
  ChainMatrices<Scalar> out;
  const Index full = checked_pow(n, spec.assignment.string_count());
  for (int i = 0; i < spec.k(); ++i) {
    const int c = spec.chi[static_cast<std::size_t>(i)];
    const int m = static_cast<int>(checked_pow(n, static_cast<Index>(spec.assignment.strings_of(c).size())));
    out.x.emplace_back();
    out.lambda.emplace_back();
    out.x_permutation.emplace_back();
    for (int j = 0; j < spec.ell[static_cast<std::size_t>(i)]; ++j) {
      Permutation p = spec.x_generator == XGenerator::cyclic_shift ? Permutation::cyclic_shift(m)
                                                                     : Permutation::sample(m, rng);
      Matrix<Scalar> x = permutation_matrix<Scalar>(p);
      if (spec.x_generator == XGenerator::signed_permutation) {
        for (int col = 0; col < m; ++col)
          if (uniform_below(rng, 2)) x(p(col), col) = Scalar(-1);
      } else {
        out.x_permutation.back().push_back(p);
      }
      out.x.back().push_back(std::move(x));
      Vector<Scalar> l = Vector<Scalar>::Ones(full);
      if (spec.lambda_generator == LambdaGenerator::random_sign)
        for (Index v = 0; v < full; ++v)
          if (uniform_below(rng, 2)) l(v) = Scalar(-1);
      out.lambda.back().push_back(std::move(l));
    }
  }
  return out;
}

/// Uniform Σ_c on [N]^{S_c} for every color.
std::vector<Permutation> sample_color_permutations(const StringAssignment& a, int n, Rng& rng);

namespace detail {
template <typename Scalar>
Scalar conj_scalar(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Complex>)
    return std::conj(x);
  else
    return x;
}
}  // namespace detail

/// The looped squared-chain test graph with the given matrices: X*_{i,j} is
/// the adjoint of X_{i,j}; u_{i,j} carries Λ_{i,j} and u'_{i,j} its adjoint,
/// multiplied at the shared vertex.
template <typename Scalar>
TestGraph<Scalar> squared_chain_test_graph(const SquaredChain& chain, const ChainMatrices<Scalar>& m) {
  TestGraph<Scalar> t;
  t.graph = chain.skeleton.graph;
  t.edge_color = chain.skeleton.edge_color;
  t.edge_label.resize(static_cast<std::size_t>(t.edge_count()));
  const Index full = m.lambda.at(0).at(0).size();
  t.vertex_label.assign(static_cast<std::size_t>(t.vertex_count()), Vector<Scalar>::Ones(full));
  for (int i = 0; i < chain.k; ++i)
    for (int j = 0; j < chain.ell[static_cast<std::size_t>(i)]; ++j) {
      const auto& x = m.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const auto& l = m.lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      t.edge_label[static_cast<std::size_t>(chain.x_edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] = x;
      t.edge_label[static_cast<std::size_t>(chain.x_star_edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] =
          x.adjoint();
      auto& at_u = t.vertex_label[static_cast<std::size_t>(chain.u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])];
      at_u = at_u.cwiseProduct(l);
      auto& at_up =
          t.vertex_label[static_cast<std::size_t>(chain.u_prime[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])];
      at_up = at_up.cwiseProduct(l.unaryExpr([](const Scalar& z) { return detail::conj_scalar(z); }));
    }
  return t;
}

/// Full-space Y_1, …, Y_k for one draw of the color permutations.
template <typename Scalar>
std::vector<Matrix<Scalar>> chain_factors(const ChainSpec& spec, const ChainMatrices<Scalar>& m,
                                          const std::vector<Permutation>& sigmas, int n, const Guards& guards = {}) {
  MultiIndexSpace space(spec.assignment.string_count(), n);
  std::vector<Matrix<Scalar>> ys;
  for (int i = 0; i < spec.k(); ++i) {
    const int c = spec.chi[static_cast<std::size_t>(i)];
    std::vector<Matrix<Scalar>> xs;
    for (const auto& x : m.x[static_cast<std::size_t>(i)]) {
      StructuredMatrix<Scalar> sm;
      sm.support = spec.assignment.strings_of(c);
      sm.n = n;
      sm.entries = conjugate_entries(x, sigmas[static_cast<std::size_t>(c)]);
      xs.push_back(lift(sm, space, guards));
    }
    ys.push_back(chain_product(m.lambda[static_cast<std::size_t>(i)], xs));
  }
  return ys;
}

template <typename Scalar>
struct SignedExpansionReport {
  RealOf<Scalar> lhs;       // ‖Δ[(Y_1 - ΔY_1) ⋯ (Y_k - ΔY_k)]‖₂²
  FieldOf<Scalar> rhs;      // Σ_I (-1)^{|I|} τ(T̊_I)
  std::vector<FieldOf<Scalar>> terms;  // τ(T̊_I) per subset, in all_signed_subsets order
  bool equal = false;       // exact for integer scalars, 1e-9 otherwise
};

template <typename Scalar>
SignedExpansionReport<Scalar> signed_expansion_check(const ChainSpec& spec, int n, std::uint64_t seed,
                                                     const Guards& guards = {}) {
  spec.validate();
  Rng rng = derive_rng(seed, {0x5e1f});
  ChainMatrices<Scalar> m = generate_chain_matrices<Scalar>(spec, n, rng);
  std::vector<Permutation> sigmas = sample_color_permutations(spec.assignment, n, rng);
  SquaredChain chain = build_squared_chain(spec);
  TestGraph<Scalar> t = squared_chain_test_graph(chain, m);
  TestGraph<Scalar> full = realize(t, spec.assignment, sigmas, n, guards);
  const Index dim = checked_pow(n, spec.assignment.string_count());

  SignedExpansionReport<Scalar> r;
  r.lhs = centered_chain_norm_squared(chain_factors(spec, m, sigmas, n, guards));
  using T = ScalarTraits<Scalar>;
  r.rhs = T::lift(Scalar(0));
  for (const auto& subset : all_signed_subsets(spec.k())) {
    FieldOf<Scalar> term = trace(quotient_test_graph(full, rho_subset(chain, subset)), guards, dim);
    r.terms.push_back(term);
    if (subset.size() % 2 == 0)
      r.rhs += term;
    else
      r.rhs -= term;
  }
  if constexpr (T::exact)
    r.equal = r.lhs == r.rhs;
  else
    r.equal = std::abs(FieldOf<Scalar>(r.lhs) - r.rhs) <= 1e-9;
  return r;
}

}  // namespace trafficlab
