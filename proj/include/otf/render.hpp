#pragma once

#include <string>

#include "otf/bigint.hpp"
#include "otf/spectrum.hpp"

namespace otf {

/// Decimal truncation of lo and hi agree to this many fractional digits.
int certified_digits(const Rational& lo, const Rational& hi, int max_digits);

/// The enclosed value truncated (toward zero) to at most `digits` fractional
/// digits, keeping only digits on which both endpoints agree. Exact
/// enclosures print all requested digits; trailing zeros are kept so columns
/// line up.
std::string render_certified(const RootEnclosure& e, int digits);

/// Truncated decimal of an exact rational with `digits` fractional digits.
std::string truncate_decimal(const Rational& r, int digits);

}  // namespace otf
