#include "seqspace/rational.hpp"

#include <cctype>

#include "seqspace/errors.hpp"

namespace seqspace {

std::string to_fraction_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> Rational {
    throw ParseError("bad rational '" + std::string(text) + "': " + msg, pos);
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto read_digits = [&]() -> BigInt {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("digit expected");
    BigInt value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      ++pos;
    }
    return value;
  };
  BigInt num = read_digits();
  BigInt den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = read_digits();
    if (den == 0) fail("zero denominator");
  }
  if (pos != text.size()) fail("trailing characters");
  Rational result(num, den);
  return negative ? Rational(-result) : result;
}

Rational rational_pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw EvalError("zero base raised to a negative power");
    return rational_pow(Rational(1) / base, -exponent);
  }
  Rational result(1);
  Rational square = base;
  std::uint64_t e = static_cast<std::uint64_t>(exponent);
  while (e != 0) {
    if (e & 1u) result *= square;
    e >>= 1u;
    if (e != 0) square *= square;
  }
  return result;
}

}  // namespace seqspace
