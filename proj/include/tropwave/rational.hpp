#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tropwave {

/// Arbitrary-precision rational (GMP backend, expression templates off so
/// `auto` always names a value).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Parses "p/q", "p", or a finite decimal such as "-0.125" into an exact
/// rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

/// Rational upper bound on sqrt(k) with denominator 2^bits: ceil(sqrt(k) * 2^bits) / 2^bits.
Rational sqrt_upper(const BigInt& k, unsigned bits = 20);
/// Rational lower bound on sqrt(k) with denominator 2^bits.
Rational sqrt_lower(const BigInt& k, unsigned bits = 20);

double to_double(const Rational& r);

}  // namespace tropwave
