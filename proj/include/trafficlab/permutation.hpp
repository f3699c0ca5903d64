#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trafficlab/rng.hpp"
#include "trafficlab/scalar.hpp"

namespace trafficlab {

/// Bijection of [0, n). Matrix convention: P e_i = e_{p(i)}, so P_{p(i), i} = 1
/// and P_p P_q = P_{p∘q}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);  // validates bijectivity

  static Permutation identity(int n);
  /// i -> i+1 mod n.
  static Permutation cyclic_shift(int n);
  static Permutation sample(int n, Rng& rng);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  /// (this ∘ other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;
  int fixed_points() const;
  bool is_identity() const { return fixed_points() == size(); }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// σ⁻¹ ∘ t ∘ σ, the permutation whose matrix is Σ* T Σ.
Permutation conjugate(const Permutation& t, const Permutation& sigma);

/// Mixed-radix indexing of [N]^strings; the first string is most significant.
class MultiIndexSpace {
 public:
  MultiIndexSpace(int string_count, int n);

  int string_count() const { return strings_; }
  int side() const { return n_; }
  Index dimension() const { return dim_; }
  /// Weight of string s in the flat index.
  Index stride(int s) const { return strides_[static_cast<std::size_t>(s)]; }

  Index encode(std::span<const int> digits) const;
  std::vector<int> decode(Index flat) const;
  int digit(Index flat, int s) const { return static_cast<int>(flat / stride(s) % n_); }

 private:
  int strings_;
  int n_;
  Index dim_;
  std::vector<Index> strides_;
};

/// A permutation of [N]^support acting on the support coordinates of
/// [N]^strings and as the identity on the others.
class CoordinatePermutation {
 public:
  CoordinatePermutation() = default;
  /// `support` ascending string indices; `local` acts on [N]^{#support}.
  CoordinatePermutation(std::vector<int> support, int n, Permutation local);

  const std::vector<int>& support() const { return support_; }
  int side() const { return n_; }
  const Permutation& local() const { return local_; }

  /// Image of a point of [N]^strings (flat index in `space`).
  Index apply(const MultiIndexSpace& space, Index point) const;
  CoordinatePermutation inverse() const;
  /// Full permutation of [N]^strings.
  Permutation expand(const MultiIndexSpace& space) const;

 private:
  std::vector<int> support_;
  int n_ = 0;
  Permutation local_;
};

struct WordLetter {
  int factor = 0;     // index into the factor list
  bool inverse = false;
};

/// tr of P_{z_1} ... P_{z_m} on [N]^strings, i.e. the fixed-point fraction of
/// z_1 ∘ ... ∘ z_m. Exact; no dense matrices.
Rational perm_word_trace(const std::vector<CoordinatePermutation>& factors, std::span<const WordLetter> word,
                         const MultiIndexSpace& space);

/// Fixed-point count of z_1 ∘ ... ∘ z_m for full-space permutations.
std::int64_t word_fixed_points(const std::vector<const Permutation*>& letters, int n);

}  // namespace trafficlab
