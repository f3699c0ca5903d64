#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace trafficlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Scalar-dependent arithmetic used by the trace and moment code.
///
/// Integer scalars (`long long`) form the exact path: raw sums are exact
/// integers and every normalized quantity is a `Rational`. Floating scalars
/// normalize in their own type.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<long long> {
  using Field = Rational;
  static constexpr bool exact = true;
  static Field lift(long long v) { return Field(v); }
  static Field divide(const Field& num, const Integer& den) { return num / Field(den); }
  static Field ratio(const Integer& num, const Integer& den) { return Field(num, den); }
  static double to_double(const Field& v) { return static_cast<double>(v); }
  static double magnitude(const Field& v) { return std::abs(static_cast<double>(v)); }
  using Real = Rational;
  using AbsSq = long long;
  static AbsSq abs2(long long v) { return v * v; }
  static Real real_divide(AbsSq num, const Integer& den) { return Real(Integer(num), den); }
};

template <>
struct ScalarTraits<double> {
  using Field = double;
  static constexpr bool exact = false;
  static Field lift(double v) { return v; }
  static Field divide(const Field& num, const Integer& den) { return num / static_cast<double>(den); }
  static Field ratio(const Integer& num, const Integer& den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(const Field& v) { return v; }
  static double magnitude(const Field& v) { return std::abs(v); }
  using Real = double;
  using AbsSq = double;
  static AbsSq abs2(double v) { return v * v; }
  static Real real_divide(AbsSq num, const Integer& den) { return num / static_cast<double>(den); }
};

template <>
struct ScalarTraits<Complex> {
  using Field = Complex;
  static constexpr bool exact = false;
  static Field lift(const Complex& v) { return v; }
  static Field divide(const Field& num, const Integer& den) { return num / static_cast<double>(den); }
  static Field ratio(const Integer& num, const Integer& den) {
    return Complex(static_cast<double>(num) / static_cast<double>(den), 0.0);
  }
  static double to_double(const Field& v) { return v.real(); }
  static double magnitude(const Field& v) { return std::abs(v); }
  using Real = double;
  using AbsSq = double;
  static AbsSq abs2(const Complex& v) { return std::norm(v); }
  static Real real_divide(AbsSq num, const Integer& den) { return num / static_cast<double>(den); }
};

template <typename Scalar>
using FieldOf = typename ScalarTraits<Scalar>::Field;

template <typename Scalar>
using RealOf = typename ScalarTraits<Scalar>::Real;

inline Integer ipow(Index base, Index exponent) {
  Integer result = 1;
  for (Index k = 0; k < exponent; ++k) result *= base;
  return result;
}

/// base^exponent as a machine integer; throws when the value would exceed
/// `limit` so callers can turn size blow-ups into guard errors.
inline Index checked_pow(Index base, Index exponent, Index limit = Index(1) << 62) {
  Index result = 1;
  for (Index k = 0; k < exponent; ++k) {
    if (base != 0 && result > limit / base) throw std::overflow_error("checked_pow: value exceeds limit");
    result *= base;
  }
  return result;
}

/// n (n-1) ... (n-k+1); zero when k > n.
inline Integer falling_factorial(Index n, Index k) {
  if (k > n) return Integer(0);
  Integer result = 1;
  for (Index j = 0; j < k; ++j) result *= (n - j);
  return result;
}

/// Thrown when an exponential enumeration or a dense materialization would
/// exceed its configured budget.
class GuardError : public std::runtime_error {
 public:
  GuardError(std::string guard, const std::string& what)
      : std::runtime_error(what), guard_(std::move(guard)) {}
  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

/// Budgets for the brute-force sums. Defaults: vertex maps 2^24, partition
/// tuples 10^7, dense full-space dimension 2^12 (a 2^12 square matrix).
struct Guards {
  double max_maps = 16777216.0;
  double max_partition_tuples = 1e7;
  Index max_dense_dim = Index(1) << 12;
};

}  // namespace trafficlab
