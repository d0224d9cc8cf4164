#include "otf/render.hpp"

#include "otf/sturm.hpp"

namespace otf {

namespace {

BigInt pow10(int d) {
  BigInt p = 1;
  for (int i = 0; i < d; ++i) p *= 10;
  return p;
}

BigInt floor_int(const Rational& r) { return numerator(floor_rational(r)); }
BigInt ceil_int(const Rational& r) { return numerator(ceil_rational(r)); }

std::string digits_of(bool negative, const BigInt& scaled, int digits) {
  std::string s = scaled.str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  return negative && scaled != 0 ? "-" + s : s;
}

}  // namespace

std::string truncate_decimal(const Rational& r, int digits) {
  const bool negative = r < 0;
  const Rational a = negative ? Rational(-r) : r;
  return digits_of(negative, floor_int(a * pow10(digits)), digits);
}

int certified_digits(const Rational& lo, const Rational& hi, int max_digits) {
  if (lo == hi) return max_digits;
  Rational a = lo, b = hi;
  if (b <= 0) {
    a = -hi;
    b = -lo;
  }
  if (a < 0) return -1;
  // The value lies strictly inside (a, b), so its truncation at k digits is
  // between floor(a 10^k) and ceil(b 10^k) - 1.
  int best = -1;
  for (int k = 0; k <= max_digits; ++k) {
    const BigInt s = pow10(k);
    if (floor_int(a * s) != ceil_int(b * s) - 1) break;
    best = k;
  }
  return best;
}

std::string render_certified(const RootEnclosure& e, int digits) {
  if (digits < 0) digits = 0;
  if (e.exact || e.lo == e.hi) return truncate_decimal(e.lo, digits);
  const int k = certified_digits(e.lo, e.hi, digits);
  if (k < 0) return "[" + truncate_decimal(e.lo, digits) + ", " + truncate_decimal(e.hi, digits) + "]";
  return truncate_decimal((e.lo + e.hi) / 2, k);
}

}  // namespace otf
