#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace seqspace {

// The scalar used everywhere in this library. Arbitrary precision, always in
// lowest terms with a positive denominator, exact under +, -, *, /.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return numerator(r); }
inline BigInt denominator_of(const Rational& r) { return denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Renders in lowest terms: "p" when the denominator is 1, else "p/q".
std::string to_fraction_string(const Rational& r);

/// Parses "p" or "p/q" with optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

/// base^exponent by repeated squaring; negative exponents invert.
/// Throws EvalError on 0^negative.
Rational rational_pow(const Rational& base, std::int64_t exponent);

}  // namespace seqspace
