#include "tropwave/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tropwave {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);  // GMP reads a leading 0 as octal
  BigInt v{std::string(s)};
  if (negative) v = -v;
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      BigInt num = parse_integer(text.substr(0, slash));
      std::string_view den_text = text.substr(slash + 1);
      if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
      BigInt den = parse_integer(den_text);
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view int_part = text.substr(0, dot);
      std::string_view frac_part = text.substr(dot + 1);
      bool negative = false;
      if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
        negative = int_part.front() == '-';
        int_part.remove_prefix(1);
      }
      if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("bare dot");
      if (!int_part.empty() && !all_digits(int_part)) throw std::invalid_argument("malformed decimal");
      if (!frac_part.empty() && !all_digits(frac_part)) throw std::invalid_argument("malformed decimal");
      std::string all = std::string(int_part) + std::string(frac_part);
      all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
      if (all.empty()) all = "0";
      BigInt digits{all};
      BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
      Rational r(digits, scale);
      return negative ? Rational(-r) : r;
    }
    return Rational(parse_integer(text));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
}

BigInt floor(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt f = floor(r);
  if (Rational(f) == r) return f;
  return f + 1;
}

Rational sqrt_upper(const BigInt& k, unsigned bits) {
  if (k < 0) throw std::domain_error("sqrt of negative");
  const BigInt scale = BigInt(1) << bits;
  const BigInt scaled = k * scale * scale;
  BigInt root = boost::multiprecision::sqrt(scaled);  // floor
  if (root * root != scaled) root += 1;
  return Rational(root, scale);
}

Rational sqrt_lower(const BigInt& k, unsigned bits) {
  if (k < 0) throw std::domain_error("sqrt of negative");
  const BigInt scale = BigInt(1) << bits;
  return Rational(boost::multiprecision::sqrt(k * scale * scale), scale);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tropwave
