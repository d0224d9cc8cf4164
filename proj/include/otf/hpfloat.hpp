#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "otf/bigint.hpp"

namespace otf {

inline constexpr unsigned kDefaultPrecisionBits = 100;
inline constexpr unsigned kMaxPrecisionBits = 400;

/// Precision (in bits) given to freshly created HPFloat values on the
/// calling thread.
unsigned working_precision() noexcept;

/// Sets the calling thread's working precision for the guard's lifetime.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) noexcept;
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Multiple-precision binary float. A default-constructed or converted value
/// takes the thread's working precision; arithmetic results do too, so a
/// whole computation is re-run at a higher precision simply by opening a
/// wider PrecisionGuard.
class HPFloat {
 public:
  HPFloat();
  HPFloat(int v);
  HPFloat(long v);
  HPFloat(long long v);
  HPFloat(unsigned long v);
  HPFloat(double v);
  explicit HPFloat(const BigInt& v);
  explicit HPFloat(const Rational& v);
  explicit HPFloat(std::string_view decimal);

  HPFloat(const HPFloat& other);
  HPFloat(HPFloat&& other) noexcept;
  HPFloat& operator=(const HPFloat& other);
  HPFloat& operator=(HPFloat&& other) noexcept;
  ~HPFloat();

  unsigned precision() const noexcept;

  HPFloat& operator+=(const HPFloat& o);
  HPFloat& operator-=(const HPFloat& o);
  HPFloat& operator*=(const HPFloat& o);
  HPFloat& operator/=(const HPFloat& o);
  HPFloat operator-() const;

  friend HPFloat operator+(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator-(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator*(const HPFloat& a, const HPFloat& b);
  friend HPFloat operator/(const HPFloat& a, const HPFloat& b);

  friend bool operator==(const HPFloat& a, const HPFloat& b);
  friend std::partial_ordering operator<=>(const HPFloat& a, const HPFloat& b);

  int sign() const noexcept;
  bool is_zero() const noexcept;
  bool is_finite() const noexcept;
  double to_double() const noexcept;
  long long to_llong() const;

  /// Exact value as a dyadic rational.
  Rational to_rational() const;

  /// Round-trippable decimal string (enough digits for this precision).
  std::string str() const;
  /// Decimal string with `digits` significant digits.
  std::string str(int digits) const;

  mpfr_srcptr raw() const noexcept { return value_; }
  mpfr_ptr raw() noexcept { return value_; }

 private:
  mpfr_t value_;
};

HPFloat abs(const HPFloat& x);
HPFloat sqrt(const HPFloat& x);
HPFloat floor(const HPFloat& x);
HPFloat round(const HPFloat& x);
HPFloat ldexp(const HPFloat& x, long e);
HPFloat min(const HPFloat& a, const HPFloat& b);
HPFloat max(const HPFloat& a, const HPFloat& b);
HPFloat pow(const HPFloat& x, unsigned long e);
HPFloat exp(const HPFloat& x);
HPFloat log(const HPFloat& x);

/// 2^-bits, the unit in the last place at `bits` precision relative to 1.
HPFloat epsilon_for(unsigned bits);

std::ostream& operator<<(std::ostream& os, const HPFloat& x);

}  // namespace otf
