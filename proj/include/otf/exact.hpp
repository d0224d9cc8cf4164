#pragma once

#include <string>
#include <vector>

#include "otf/bigint.hpp"
#include "otf/hpfloat.hpp"

namespace otf {

/// Polynomial in one variable with big-integer coefficients, lowest power
/// first. The zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(int k, const BigInt& c = 1);
  /// a0 + a1 x
  static IntPoly linear(const BigInt& a0, const BigInt& a1);

  const std::vector<BigInt>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Coefficient of x^k; zero beyond the degree.
  BigInt coeff(int k) const;
  const BigInt& leading() const;

  IntPoly derivative() const;
  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& s);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& s) { return a *= s; }
  friend IntPoly operator*(const BigInt& s, IntPoly a) { return a *= s; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  BigInt eval(const BigInt& x) const;
  /// Exact value at a rational point.
  Rational eval(const Rational& x) const;
  HPFloat eval(const HPFloat& x) const;

  /// Human-readable form in the variable `var`, highest power first,
  /// e.g. "R^2 - 3R + 2".
  std::string str(const std::string& var = "R") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Stirling numbers of the second kind S(n,k).
BigInt stirling_second(int n, int k);
/// Signed Stirling numbers of the first kind s(n,k).
BigInt stirling_first(int n, int k);

/// Rows n <= cap are memoized process-wide (guarded by a mutex); larger rows
/// are rebuilt on demand. Returns the previous cap.
int set_stirling_memo_cap(int cap);

/// Touchard polynomial B_n via B_{n+1} = x (B_n + B_n').
IntPoly touchard(int n);
/// Touchard polynomial B_n via sum_k S(n,k) x^k. Kept for cross-checking.
IntPoly touchard_from_stirling(int n);

/// Falling factorial (x)_n = x (x-1) ... (x-n+1).
IntPoly falling_factorial(int n);

/// Elementary symmetric values e_0..e_n of the node list.
std::vector<BigInt> elementary_symmetric(const std::vector<long long>& nodes);

/// Polar form h_n(u; R) = sum_k (-1)^{n-k} e_k(u) B_{n-k}(R) as a polynomial
/// in R. `nodes` must have exactly n entries.
IntPoly polar_h_poly(const std::vector<long long>& nodes, int n);

/// H_n(x; R) = sum_k (-1)^{n-k} C(n,k) B_{n-k}(R) x^k for an integer x.
IntPoly diagonal_h_poly(long long x, int n);

/// Exact sign of p(r).
int eval_sign(const IntPoly& p, const Rational& r);

/// p or -p, whichever has a positive leading coefficient.
IntPoly normalize_sign(const IntPoly& p);

}  // namespace otf
