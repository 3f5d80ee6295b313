#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "tropwave/rational.hpp"

namespace tropwave {

enum class NumericMode { exact, approximate };

/// Raised when exact and approximate values meet in one expression.
class ModeMismatch : public std::logic_error {
 public:
  ModeMismatch() : std::logic_error("mixing exact and approximate scalars") {}
};

/// A real number that is either an exact rational or a binary64 value.
///
/// Exact arithmetic is closed and error-free. Approximate values exist only
/// for domains whose support values are irrational (balls, support oracles).
/// Combining the two modes throws ModeMismatch; plain integers are
/// representable in both modes and adopt the mode of the other operand.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Scalar(I v) : value_(Rational(static_cast<long long>(v))) {}  // NOLINT

  static Scalar approximate(double v) { return Scalar(ApproxTag{}, v); }
  static Scalar from_int(long long v, NumericMode mode) {
    return mode == NumericMode::exact ? Scalar(Rational(v)) : approximate(static_cast<double>(v));
  }
  static Scalar zero(NumericMode mode) { return from_int(0, mode); }
  /// Parses "p/q" or a decimal; in approximate mode the result is rounded.
  static Scalar parse(const std::string& text, NumericMode mode);

  NumericMode mode() const {
    return value_.index() == 0 ? NumericMode::exact : NumericMode::approximate;
  }
  bool is_exact() const { return value_.index() == 0; }

  /// The exact value; throws ModeMismatch for approximate scalars.
  const Rational& rational() const;
  double to_double() const;
  int sign() const;

  /// "p/q" for exact values, shortest round-trip decimal otherwise.
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar& operator*=(long long k);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  template <std::integral I>
  friend Scalar operator+(Scalar a, I b) { return a += Scalar::from_int(b, a.mode()); }
  template <std::integral I>
  friend Scalar operator+(I b, Scalar a) { return a += Scalar::from_int(b, a.mode()); }
  template <std::integral I>
  friend Scalar operator-(Scalar a, I b) { return a -= Scalar::from_int(b, a.mode()); }
  template <std::integral I>
  friend Scalar operator-(I b, const Scalar& a) { return Scalar::from_int(b, a.mode()) - a; }
  template <std::integral I>
  friend Scalar operator*(Scalar a, I b) { return a *= static_cast<long long>(b); }
  template <std::integral I>
  friend Scalar operator*(I b, Scalar a) { return a *= static_cast<long long>(b); }
  template <std::integral I>
  friend Scalar operator/(Scalar a, I b) { return a /= Scalar::from_int(b, a.mode()); }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);
  template <std::integral I>
  friend bool operator==(const Scalar& a, I b) { return a == Scalar::from_int(b, a.mode()); }
  template <std::integral I>
  friend std::strong_ordering operator<=>(const Scalar& a, I b) {
    return a <=> Scalar::from_int(b, a.mode());
  }

 private:
  struct ApproxTag {};
  Scalar(ApproxTag, double v) : value_(v) {}
  void require_same_mode(const Scalar& o) const {
    if (value_.index() != o.value_.index()) throw ModeMismatch();
  }

  std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& s);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);
/// Square root; exact inputs must be perfect squares of rationals,
/// approximate inputs use std::sqrt.
Scalar sqrt_approx(const Scalar& s);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Tie test: exact equality in exact mode, |a-b| <= tol otherwise.
bool nearly_equal(const Scalar& a, const Scalar& b, double tol);

}  // namespace tropwave
