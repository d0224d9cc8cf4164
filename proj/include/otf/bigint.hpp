#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace otf {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "p/q" with q > 0; integers are still written with a "/1" denominator.
std::string to_fraction_string(const Rational& r);

/// Parses "p/q" or "p".
Rational parse_fraction(const std::string& s);

inline int sign(const BigInt& v) { return v.sign(); }
inline int sign(const Rational& v) { return v.sign(); }

}  // namespace otf
