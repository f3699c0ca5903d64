#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trafficlab/permutation.hpp"
#include "trafficlab/scalar.hpp"

namespace trafficlab {

/// A matrix on the strings in `support` (ascending string indices), acting as
/// entries ⊗ I on the other strings. Entries are indexed by [N]^support in the
/// multi-index order.
template <typename Scalar>
struct StructuredMatrix {
  std::vector<int> support;
  int n = 0;
  Matrix<Scalar> entries;
  std::optional<Permutation> permutation;  // set when entries is its 0/1 matrix

  Index dimension() const { return entries.rows(); }

  static StructuredMatrix from_permutation(std::vector<int> support, int n, const Permutation& p) {
    StructuredMatrix m;
    m.support = std::move(support);
    m.n = n;
    m.entries = Matrix<Scalar>::Zero(p.size(), p.size());
    for (int i = 0; i < p.size(); ++i) m.entries(p(i), i) = Scalar(1);
    m.permutation = p;
    return m;
  }
};

template <typename Scalar>
Matrix<Scalar> permutation_matrix(const Permutation& p) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(p.size(), p.size());
  for (int i = 0; i < p.size(); ++i) m(p(i), i) = Scalar(1);
  return m;
}

/// Σ* X Σ by relabeling: result(a,b) = X(σ(a), σ(b)).
template <typename Scalar>
Matrix<Scalar> conjugate_entries(const Matrix<Scalar>& x, const Permutation& sigma) {
  if (x.rows() != sigma.size() || x.cols() != sigma.size())
    throw std::invalid_argument("conjugate: permutation size does not match matrix");
  Matrix<Scalar> out(x.rows(), x.cols());
  for (Index b = 0; b < x.cols(); ++b)
    for (Index a = 0; a < x.rows(); ++a) out(a, b) = x(sigma(static_cast<int>(a)), sigma(static_cast<int>(b)));
  return out;
}

template <typename Scalar>
StructuredMatrix<Scalar> conjugate_by_color(const StructuredMatrix<Scalar>& x, const Permutation& sigma) {
  StructuredMatrix<Scalar> out = x;
  out.entries = conjugate_entries(x.entries, sigma);
  if (x.permutation) out.permutation = conjugate(*x.permutation, sigma);
  return out;
}

/// Full-space matrix of x ⊗ I on [N]^strings.
template <typename Scalar>
Matrix<Scalar> lift(const StructuredMatrix<Scalar>& x, const MultiIndexSpace& space, const Guards& guards = {}) {
  if (space.dimension() > guards.max_dense_dim)
    throw GuardError("guard-dense", "full-space dimension " + std::to_string(space.dimension()) + " exceeds dense guard");
  if (space.side() != x.n) throw std::invalid_argument("lift: side mismatch");
  for (int s : x.support)
    if (s < 0 || s >= space.string_count()) throw std::invalid_argument("lift: support not contained in target");
  const Index dim = space.dimension();
  std::vector<Index> local(static_cast<std::size_t>(dim));
  std::vector<Index> rest(static_cast<std::size_t>(dim));
  std::vector<char> in_support(static_cast<std::size_t>(space.string_count()), 0);
  for (int s : x.support) in_support[static_cast<std::size_t>(s)] = 1;
  for (Index p = 0; p < dim; ++p) {
    Index l = 0, r = 0;
    for (int s = 0; s < space.string_count(); ++s) {
      if (in_support[static_cast<std::size_t>(s)])
        l = l * x.n + space.digit(p, s);
      else
        r = r * x.n + space.digit(p, s);
    }
    local[static_cast<std::size_t>(p)] = l;
    rest[static_cast<std::size_t>(p)] = r;
  }
  Matrix<Scalar> out = Matrix<Scalar>::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i)
      if (rest[static_cast<std::size_t>(i)] == rest[static_cast<std::size_t>(j)])
        out(i, j) = x.entries(local[static_cast<std::size_t>(i)], local[static_cast<std::size_t>(j)]);
  return out;
}

/// Diagonal part, as a vector.
template <typename Scalar>
Vector<Scalar> delta(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("delta: matrix is not square");
  return a.diagonal();
}

template <typename Scalar>
FieldOf<Scalar> normalized_trace(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("normalized_trace: matrix is not square");
  using T = ScalarTraits<Scalar>;
  return T::divide(T::lift(a.trace()), Integer(a.rows()));
}

/// ‖a‖₂² = tr(a* a) = Σ|a_ij|² / dim.
template <typename Scalar>
RealOf<Scalar> two_norm_squared(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("two_norm: matrix is not square");
  using T = ScalarTraits<Scalar>;
  typename T::AbsSq sum = 0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) sum += T::abs2(a(i, j));
  return T::real_divide(sum, Integer(a.rows()));
}

template <typename Scalar>
double two_norm(const Matrix<Scalar>& a) {
  return std::sqrt(static_cast<double>(two_norm_squared(a)));
}

/// Λ_1 X_1 Λ_2 X_2 ⋯ Λ_m X_m with the diagonal factors applied as row scalings.
template <typename Scalar>
Matrix<Scalar> chain_product(const std::vector<Vector<Scalar>>& lambdas, const std::vector<Matrix<Scalar>>& xs) {
  if (lambdas.size() != xs.size() || xs.empty()) throw std::invalid_argument("chain_product: list length mismatch");
  const Index dim = xs.front().rows();
  Matrix<Scalar> acc;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j].rows() != dim || xs[j].cols() != dim || lambdas[j].size() != dim)
      throw std::invalid_argument("chain_product: dimension mismatch");
    Matrix<Scalar> factor = lambdas[j].asDiagonal() * xs[j];
    acc = j == 0 ? factor : Matrix<Scalar>(acc * factor);
  }
  return acc;
}

/// Δ[(Y_1 - ΔY_1) ⋯ (Y_k - ΔY_k)] as a diagonal vector.
template <typename Scalar>
Vector<Scalar> centered_chain_diagonal(const std::vector<Matrix<Scalar>>& ys) {
  if (ys.empty()) throw std::invalid_argument("centered_chain: empty list");
  const Index dim = ys.front().rows();
  Matrix<Scalar> acc;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i].rows() != dim || ys[i].cols() != dim) throw std::invalid_argument("centered_chain: dimension mismatch");
    Matrix<Scalar> centered = ys[i];
    centered.diagonal().setZero();
    acc = i == 0 ? centered : Matrix<Scalar>(acc * centered);
  }
  return acc.diagonal();
}

/// ‖Δ[(Y_1 - ΔY_1) ⋯ (Y_k - ΔY_k)]‖₂², exact for integer scalars.
template <typename Scalar>
RealOf<Scalar> centered_chain_norm_squared(const std::vector<Matrix<Scalar>>& ys) {
  Vector<Scalar> d = centered_chain_diagonal(ys);
  using T = ScalarTraits<Scalar>;
  typename T::AbsSq sum = 0;
  for (Index i = 0; i < d.size(); ++i) sum += T::abs2(d(i));
  return T::real_divide(sum, Integer(d.size()));
}

template <typename Scalar>
double centered_chain_norm(const std::vector<Matrix<Scalar>>& ys) {
  return std::sqrt(static_cast<double>(centered_chain_norm_squared(ys)));
}

/// Permutation fast path: each Y_i - ΔY_i is the partial permutation of the
/// non-fixed points of y_i, so the diagonal of the product is the indicator of
/// points that return after k moves with no fixed step. Returns that count;
/// the squared norm is count / dim.
std::int64_t centered_chain_returns(const std::vector<Permutation>& ys);

}  // namespace trafficlab
