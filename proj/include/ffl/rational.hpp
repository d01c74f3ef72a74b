#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "ffl/errors.hpp"

namespace ffl {

// Exact rational arithmetic. All distances, radii and simulation-function
// values in the library are Rational; the only floating point lives in
// the continuous ellipse demo.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string format_rational(const Rational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

// Accepts "p", "-p", "p/q", "-p/q"; q must be a positive integer.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw ParameterError("not a rational: '" + std::string(text) + "'");
  };
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) fail();
  text = text.substr(begin, end - begin + 1);

  auto parse_int = [&](std::string_view part, bool sign_ok) -> BigInt {
    if (part.empty()) fail();
    size_t i = 0;
    if (sign_ok && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) fail();
    for (size_t k = i; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') fail();
    return BigInt(std::string(part));
  };

  size_t slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text, true));
  BigInt num = parse_int(text.substr(0, slash), true);
  BigInt den = parse_int(text.substr(slash + 1), false);
  if (den == 0) fail();
  return Rational(num, den);
}

inline double to_double(const Rational& v) { return v.convert_to<double>(); }

inline Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

}  // namespace ffl
