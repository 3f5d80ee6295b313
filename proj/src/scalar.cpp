#include "tropwave/scalar.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace tropwave {

Scalar Scalar::parse(const std::string& text, NumericMode mode) {
  Rational r = parse_rational(text);
  if (mode == NumericMode::exact) return Scalar(std::move(r));
  return approximate(tropwave::to_double(r));
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ModeMismatch();
}

double Scalar::to_double() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return tropwave::to_double(*r);
  return std::get<double>(value_);
}

int Scalar::sign() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->sign();
  const double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

std::string Scalar::str() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return to_string(*r);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value_));
  return std::string(buf, res.ptr);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_mode(o);
  if (auto* r = std::get_if<Rational>(&value_)) {
    *r += std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) += std::get<double>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_mode(o);
  if (auto* r = std::get_if<Rational>(&value_)) {
    *r -= std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) -= std::get<double>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_mode(o);
  if (auto* r = std::get_if<Rational>(&value_)) {
    *r *= std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) *= std::get<double>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_mode(o);
  if (auto* r = std::get_if<Rational>(&value_)) {
    const Rational& d = std::get<Rational>(o.value_);
    if (d == 0) throw std::domain_error("division by zero");
    *r /= d;
  } else {
    std::get<double>(value_) /= std::get<double>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(long long k) {
  if (auto* r = std::get_if<Rational>(&value_)) {
    *r *= k;
  } else {
    std::get<double>(value_) *= static_cast<double>(k);
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return Scalar(Rational(-*r));
  return approximate(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_mode(b);
  if (const auto* r = std::get_if<Rational>(&a.value_)) return *r == std::get<Rational>(b.value_);
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.require_same_mode(b);
  if (const auto* r = std::get_if<Rational>(&a.value_)) {
    const Rational& s = std::get<Rational>(b.value_);
    if (*r < s) return std::strong_ordering::less;
    if (s < *r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  const double x = std::get<double>(a.value_);
  const double y = std::get<double>(b.value_);
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }
Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

Scalar sqrt_approx(const Scalar& s) {
  if (s.is_exact()) {
    const Rational& r = s.rational();
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) {
      throw std::domain_error("exact square root of a non-square rational");
    }
    return Scalar(Rational(sn, sd));
  }
  return Scalar::approximate(std::sqrt(s.to_double()));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool nearly_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact()) return a == b;
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

}  // namespace tropwave
