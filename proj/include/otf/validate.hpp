#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "otf/exact.hpp"
#include "otf/hpfloat.hpp"
#include "otf/optimizer.hpp"

namespace otf {

/// Phi(x) = sum alpha_k (1 + x/R)^{e_k}.
struct StabilityPolynomial {
  HPFloat R;
  std::vector<std::pair<long long, HPFloat>> terms;

  static StabilityPolynomial from_result(const ThresholdResult& r);
  long long max_exponent() const;
  /// Monomial coefficients of Phi(x), lowest first.
  std::vector<HPFloat> monomial_coeffs() const;
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;
};

inline constexpr double kOrderTolerance = 1e-20;
inline constexpr double kCoefficientFloor = -1e-25;

struct OrderReport {
  bool pass = false;
  /// sum alpha_i (e_i)_l / R^l - 1 for l = 0..n.
  std::vector<HPFloat> residuals;
  /// First l whose residual exceeds the tolerance, -1 when none does.
  int first_failure = -1;
  double tolerance = kOrderTolerance;
};

OrderReport check_order(const StabilityPolynomial& phi, int n,
                        double tolerance = kOrderTolerance);

struct MonotonicReport {
  bool pass = false;
  /// Exponents (or Taylor indices, for the monomial check) that failed.
  std::vector<long long> offending;
  std::vector<HPFloat> offending_values;
  /// Largest exponent, for the degree check.
  long long max_exponent = 0;
  bool degree_ok = true;
};

/// All coefficients >= floor and every exponent <= m.
MonotonicReport check_abs_monotonic(const StabilityPolynomial& phi, int m,
                                    double floor = kCoefficientFloor);

/// Taylor coefficients of the monomial-form polynomial `c` at -R, all >= floor.
MonotonicReport check_abs_monotonic_monomial(const std::vector<HPFloat>& c, const HPFloat& R,
                                             double floor = kCoefficientFloor);

/// Linear system u' = A u with non-negative off-diagonal entries.
class MetzlerSystem {
 public:
  /// Throws DomainError if an off-diagonal entry is negative or the matrix
  /// is not square.
  explicit MetzlerSystem(std::vector<std::vector<double>> a);

  /// a_ii = -alpha, a_{i,i-1} = alpha.
  static MetzlerSystem upwind(int s, double alpha);

  int dimension() const noexcept { return static_cast<int>(a_.size()); }
  /// max |a_ii| over the non-positive diagonal entries.
  double alpha() const noexcept { return alpha_; }
  const std::vector<std::vector<double>>& matrix() const noexcept { return a_; }

 private:
  std::vector<std::vector<double>> a_;
  double alpha_ = 0;
};

/// u <- phi(hA) u, in double precision.
std::vector<double> apply_phi(const StabilityPolynomial& phi, const MetzlerSystem& sys, double h,
                              const std::vector<double>& u);

struct PositivityOptions {
  int steps = 100;
  int trials = 50;
  std::uint64_t seed = 1;
  double delta = 0.05;
  int violation_trials = 200;
  /// Roundoff band for the preservation leg.
  double band = 1e-18;
};

struct PositivityReport {
  double h = 0;
  bool preserved = false;
  double min_component = 0;
  int steps = 0;
  int trials = 0;

  double violation_h = 0;
  /// Some start produced a negative component at the enlarged step.
  bool bound_active = false;
  double violation_min = 0;
  std::vector<double> counterexample;
};

/// Preservation leg at h = R / alpha on `sys`, then the violation search at
/// h = (1 + delta) R / alpha on the upwind system of the same size.
PositivityReport positivity_demo(const StabilityPolynomial& phi, const MetzlerSystem& sys,
                                 const PositivityOptions& opts = {});

struct ContractivityReport {
  double h = 0;
  double rho = 0;
  /// max |phi(h lambda)| over the sampled eigenvalues in the disc
  /// |lambda + rho| <= rho.
  double max_gain = 0;
  bool contractive = false;
  int samples = 0;
  double violation_h = 0;
  double violation_gain = 0;
};

/// Euclidean-norm contractivity for normal matrices, whose norm is the
/// largest |phi(h lambda)| over the spectrum.
ContractivityReport contractivity_demo(const StabilityPolynomial& phi, double rho, int samples,
                                       std::uint64_t seed, double delta = 0.05);

struct FarkasReport {
  HPFloat R;
  int trials = 0;
  int negative = 0;
  HPFloat min_integral;
  /// First polynomial with a negative integral, if any.
  std::optional<IntPoly> counterexample;
};

/// Random polynomials of degree <= n that are non-negative on {0..m},
/// integrated against the Poisson measure of parameter R.
FarkasReport farkas_check(int m, int n, const HPFloat& R, int trials, std::uint64_t seed);

/// (m - t) prod (t - e_k) over the exponents of an odd-order result other
/// than the last.
IntPoly farkas_witness(const ThresholdResult& r);

/// Random polynomial of degree <= n, non-negative at every integer in 0..m.
IntPoly random_nonnegative_poly(int m, int n, std::mt19937_64& rng);

}  // namespace otf
