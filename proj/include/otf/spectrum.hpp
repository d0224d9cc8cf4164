#pragma once

#include <optional>
#include <vector>

#include "otf/exact.hpp"
#include "otf/hpfloat.hpp"
#include "otf/orthopoly.hpp"

namespace otf {

/// Index sequence (n_1, ..., n_{p-1}) with 1 <= n_k <= p-k+1.
struct PConfiguration {
  std::vector<int> entries;

  int p() const noexcept { return static_cast<int>(entries.size()) + 1; }
  bool valid() const noexcept;
  friend bool operator==(const PConfiguration&, const PConfiguration&) = default;
};

/// Exponent pairs (q, q+1), stored flat in the order they were chosen.
struct IntegralSpectrum {
  std::vector<long long> values;

  int pairs() const noexcept { return static_cast<int>(values.size() / 2); }
  std::vector<long long> sorted() const;
  friend bool operator==(const IntegralSpectrum&, const IntegralSpectrum&) = default;
};

/// Certified enclosure of a real root of `poly`. Either exact (lo == hi is
/// the root) or poly changes sign over [lo, hi] with a single root inside.
struct RootEnclosure {
  IntPoly poly;
  Rational lo;
  Rational hi;
  HPFloat value;
  bool exact = false;
};

struct SpectrumEval {
  IntegralSpectrum spectrum;
  HPFloat rho;
  unsigned bits = 0;
  /// A selected zero sat within the guard band of an integer even at the
  /// highest precision tried.
  bool near_integer = false;
};

/// M(cfg, R). Throws DegeneracyError on a pair collision.
IntegralSpectrum integral_spectrum(const PConfiguration& cfg, const HPFloat& R, int p);

/// Spectrum and spectral radius together, escalating precision when a zero
/// is too close to an integer or a Christoffel pivot is too small.
SpectrumEval evaluate_spectrum(const PConfiguration& cfg, const HPFloat& R);

/// Zero of the degree-1 orthogonal polynomial of the Poisson measure times
/// prod (t - M_i).
HPFloat spectral_radius(const IntegralSpectrum& M, const HPFloat& R);

/// Same quantity from Touchard moments: int t Omega / int Omega.
HPFloat spectral_radius_moments(const IntegralSpectrum& M, const HPFloat& R);

struct OptimalSpectrum {
  IntegralSpectrum spectrum;
  HPFloat r_lo;
  HPFloat r_hi;
  /// Set when the spectrum jumps inside a bracket narrower than the working
  /// precision: `spectrum` is M(r_hi) and this is M(r_lo).
  std::optional<IntegralSpectrum> alternate;
  int iterations = 0;
  /// Some evaluation chose a floor for a zero still within the guard band of
  /// an integer at the highest precision.
  bool near_integer = false;
};

struct SpectrumSearchOptions {
  /// Optional warm lower bound, e.g. R_{m-1,n}.
  std::optional<HPFloat> lower_hint;
  int max_iterations = 200;
};

/// Dichotomy on R for the spectrum whose radius equals m. Throws
/// OutOfBracketError when the configuration cannot reach m inside the
/// Laguerre bounds, ConvergenceError when the cap is hit.
OptimalSpectrum optimal_spectrum(const PConfiguration& cfg, int m,
                                 const SpectrumSearchOptions& opts = {});

/// Certified zero of h(nodes; R) inside [lo, hi], narrowed to width
/// 2^-bits * max(1, hi).
RootEnclosure refine_root(const std::vector<long long>& nodes, const Rational& lo,
                          const Rational& hi, unsigned bits = kDefaultPrecisionBits);

/// Re-checks the RootEnclosure invariant.
bool enclosure_is_valid(const RootEnclosure& e);

/// Minimal base length for a p-stage spectrum evaluation.
int base_length(int p);

/// Recurrence of the Poisson measure times prod (t - shifts), with `count`
/// coefficients: Christoffel chain first, Stieltjes fallback on breakdown.
RecurrenceCoeffs transformed_recurrence(const HPFloat& R, const std::vector<long long>& shifts,
                                        int count);

}  // namespace otf
