#include "trafficlab/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace trafficlab {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images_.resize(static_cast<std::size_t>(n));
  std::iota(p.images_.begin(), p.images_.end(), 0);
  return p;
}

Permutation Permutation::cyclic_shift(int n) {
  Permutation p = identity(n);
  for (int i = 0; i < n; ++i) p.images_[static_cast<std::size_t>(i)] = (i + 1) % n;
  return p;
}

Permutation Permutation::sample(int n, Rng& rng) {
  if (n <= 0) throw std::invalid_argument("Permutation::sample: size must be positive");
  Permutation p = identity(n);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[j]);
  }
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (int i = 0; i < size(); ++i) p.images_[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("Permutation::compose: size mismatch");
  Permutation p;
  p.images_.resize(images_.size());
  for (int i = 0; i < size(); ++i)
    p.images_[static_cast<std::size_t>(i)] = images_[static_cast<std::size_t>(other(i))];
  return p;
}

int Permutation::fixed_points() const {
  int count = 0;
  for (int i = 0; i < size(); ++i) count += images_[static_cast<std::size_t>(i)] == i;
  return count;
}

Permutation conjugate(const Permutation& t, const Permutation& sigma) {
  return sigma.inverse().compose(t.compose(sigma));
}

MultiIndexSpace::MultiIndexSpace(int string_count, int n) : strings_(string_count), n_(n) {
  if (string_count < 0 || n < 1) throw std::invalid_argument("MultiIndexSpace: bad shape");
  strides_.assign(static_cast<std::size_t>(string_count), 1);
  dim_ = 1;
  for (int s = string_count - 1; s >= 0; --s) {
    strides_[static_cast<std::size_t>(s)] = dim_;
    if (dim_ > (Index(1) << 40) / n) throw std::overflow_error("MultiIndexSpace: dimension too large");
    dim_ *= n;
  }
}

Index MultiIndexSpace::encode(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) != strings_) throw std::invalid_argument("MultiIndexSpace::encode: wrong arity");
  Index flat = 0;
  for (int d : digits) {
    if (d < 0 || d >= n_) throw std::out_of_range("MultiIndexSpace::encode: component out of range");
    flat = flat * n_ + d;
  }
  return flat;
}

std::vector<int> MultiIndexSpace::decode(Index flat) const {
  if (flat < 0 || flat >= dim_) throw std::out_of_range("MultiIndexSpace::decode: index out of range");
  std::vector<int> digits(static_cast<std::size_t>(strings_));
  for (int s = strings_ - 1; s >= 0; --s) {
    digits[static_cast<std::size_t>(s)] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return digits;
}

CoordinatePermutation::CoordinatePermutation(std::vector<int> support, int n, Permutation local)
    : support_(std::move(support)), n_(n), local_(std::move(local)) {
  Index expect = 1;
  for (std::size_t k = 0; k < support_.size(); ++k) {
    if (k > 0 && support_[k] <= support_[k - 1])
      throw std::invalid_argument("CoordinatePermutation: support must be strictly ascending");
    expect *= n;
  }
  if (local_.size() != expect) throw std::invalid_argument("CoordinatePermutation: local size is not N^#support");
}

Index CoordinatePermutation::apply(const MultiIndexSpace& space, Index point) const {
  Index local = 0;
  for (int s : support_) local = local * n_ + space.digit(point, s);
  Index image = local_(static_cast<int>(local));
  Index out = point;
  for (auto it = support_.rbegin(); it != support_.rend(); ++it) {
    const Index stride = space.stride(*it);
    out += (image % n_ - space.digit(point, *it)) * stride;
    image /= n_;
  }
  return out;
}

CoordinatePermutation CoordinatePermutation::inverse() const {
  return CoordinatePermutation(support_, n_, local_.inverse());
}

Permutation CoordinatePermutation::expand(const MultiIndexSpace& space) const {
  if (space.side() != n_) throw std::invalid_argument("CoordinatePermutation::expand: side mismatch");
  if (space.dimension() > (Index(1) << 31) - 1) throw std::overflow_error("CoordinatePermutation::expand: too large");
  std::vector<int> images(static_cast<std::size_t>(space.dimension()));
  for (Index x = 0; x < space.dimension(); ++x) images[static_cast<std::size_t>(x)] = static_cast<int>(apply(space, x));
  return Permutation(std::move(images));
}

std::int64_t word_fixed_points(const std::vector<const Permutation*>& letters, int n) {
  std::vector<int> point(static_cast<std::size_t>(n));
  std::iota(point.begin(), point.end(), 0);
  // Rightmost letter acts first.
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const auto& img = (*it)->images();
    if (static_cast<int>(img.size()) != n) throw std::invalid_argument("word_fixed_points: size mismatch");
    for (auto& x : point) x = img[static_cast<std::size_t>(x)];
  }
  std::int64_t fixed = 0;
  for (int x = 0; x < n; ++x) fixed += point[static_cast<std::size_t>(x)] == x;
  return fixed;
}

Rational perm_word_trace(const std::vector<CoordinatePermutation>& factors, std::span<const WordLetter> word,
                         const MultiIndexSpace& space) {
  const int dim = static_cast<int>(space.dimension());
  if (word.empty()) return Rational(1);
  // Expand each distinct (factor, inverse) pair once.
  std::vector<Permutation> cache(factors.size() * 2);
  std::vector<char> ready(factors.size() * 2, 0);
  std::vector<const Permutation*> letters;
  for (const auto& w : word) {
    if (w.factor < 0 || w.factor >= static_cast<int>(factors.size()))
      throw std::out_of_range("perm_word_trace: factor index out of range");
    std::size_t slot = static_cast<std::size_t>(w.factor) * 2 + (w.inverse ? 1 : 0);
    if (!ready[slot]) {
      const auto& f = factors[static_cast<std::size_t>(w.factor)];
      cache[slot] = w.inverse ? f.inverse().expand(space) : f.expand(space);
      ready[slot] = 1;
    }
    letters.push_back(&cache[slot]);
  }
  return Rational(word_fixed_points(letters, dim), dim);
}

}  // namespace trafficlab
