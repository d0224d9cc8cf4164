#pragma once

#include <optional>
#include <vector>

#include "otf/exact.hpp"

namespace otf {

/// lc(b)^(deg a - deg b + 1) * a mod b, computed over the integers.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
/// gcd of the coefficients, positive; zero for the zero polynomial.
BigInt content(const IntPoly& p);
/// p / content(p), keeping the sign of p.
IntPoly primitive_part(const IntPoly& p);
/// Exact quotient a / b over the integers; throws if b does not divide a.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);
/// Primitive gcd with positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
/// Product of the distinct irreducible factors (primitive, positive leading).
IntPoly square_free_part(const IntPoly& p);

/// 1 + ceil(max |a_i| / |a_n|): every real root lies in (-B, B).
BigInt cauchy_bound(const IntPoly& p);

/// Sturm chain of the square-free part of a polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p);

  const IntPoly& base() const noexcept { return chain_.front(); }
  const std::vector<IntPoly>& chain() const noexcept { return chain_; }

  /// Sign changes of the chain at x, zeros skipped.
  int sign_changes(const Rational& x) const;
  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<IntPoly> chain_;
};

/// Interval holding exactly one root of a square-free polynomial. When
/// `exact` is set the root is lo == hi. Otherwise the polynomial is nonzero
/// with opposite signs at lo and hi and the root lies strictly inside.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact = false;
};

/// Isolates the distinct real roots of p in (lo, hi], ascending.
std::vector<RootInterval> isolate_roots(const IntPoly& p, const Rational& lo,
                                        const Rational& hi);

/// Isolates every distinct positive real root of p.
std::vector<RootInterval> isolate_positive_roots(const IntPoly& p);

/// Bisects `iv` (a root interval of the square-free polynomial `sqf`) over
/// dyadic midpoints until hi - lo <= width or the root is hit exactly.
RootInterval refine_interval(const IntPoly& sqf, RootInterval iv, const Rational& width);

/// An integer root of p in [lo, hi], if one exists. Only scans when the
/// interval contains at most `max_scan` integers.
std::optional<BigInt> integer_root_in(const IntPoly& p, const Rational& lo, const Rational& hi,
                                      long max_scan = 64);

Rational floor_rational(const Rational& r);
Rational ceil_rational(const Rational& r);

}  // namespace otf
