#pragma once

// Exact rational arithmetic over arbitrary-precision integers.
//
// Rational values are always kept in canonical form: numerator and
// denominator coprime, denominator positive, zero stored as 0/1.  The
// boost::multiprecision backend maintains this invariant on every
// operation, so equality is structural equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symforge {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numer(const Rational& x) { return numerator(x); }
inline Int denom(const Rational& x) { return denominator(x); }

inline std::string to_string(const Int& n) { return n.str(); }

// Canonical text form: "num/den" in lowest terms, or just "num" when the
// denominator is 1.  This is the wire format used by every serializer.
inline std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

// ADL hook used by poly_to_string for any coefficient type.
inline std::string scalar_str(const Rational& x) { return to_string(x); }

inline Int int_from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  try {
    return Int(std::string(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed integer literal: " + std::string(s));
  }
}

inline Rational rational_from_string(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  if (den < 0) {  // normalize; the Rational constructor insists on positive denominators
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

// Least nonnegative residue of n mod p.
inline std::uint64_t mod_p(const Int& n, std::uint64_t p) {
  Int r = n % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

inline bool divides(std::uint64_t p, const Int& n) { return n % p == 0; }

}  // namespace symforge
