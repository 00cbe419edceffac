#include "fembed/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fembed {

Rational parse_rational(const std::string& text) {
  // Grammar: [+-]?digits ( '/' digits )?   -- the denominator carries no sign,
  // so "3/-4" is rejected rather than normalized.
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto fail = [&text]() -> void {
    throw std::invalid_argument("malformed rational literal: \"" + text + "\"");
  };
  if (n == 0) fail();
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::size_t num_begin = i;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) fail();
  BigInt num(text.substr(num_begin, i - num_begin));
  if (negative) num = -num;
  if (i == n) return Rational(num);
  if (text[i] != '/') fail();
  ++i;
  std::size_t den_begin = i;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == den_begin || i != n) fail();
  BigInt den(text.substr(den_begin));
  if (den == 0) throw std::invalid_argument("zero denominator in rational literal: \"" + text + "\"");
  return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

}  // namespace fembed
