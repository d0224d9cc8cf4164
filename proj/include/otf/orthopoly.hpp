#pragma once

#include <vector>

#include "otf/exact.hpp"
#include "otf/hpfloat.hpp"

namespace otf {

/// Three-term recurrence p_{j} = (t - b_j) p_{j-1} - g_j p_{j-2} for monic
/// orthogonal polynomials. Index 0 holds b_1 and g_1 (g_1 = 0).
struct RecurrenceCoeffs {
  std::vector<HPFloat> b;
  std::vector<HPFloat> g;

  int size() const noexcept { return static_cast<int>(b.size()); }
};

struct Quadrature {
  std::vector<HPFloat> nodes;
  std::vector<HPFloat> weights;
};

/// Poisson-Charlier coefficients b_i = R+i-1, g_i = (i-1)R for i = 1..count.
RecurrenceCoeffs charlier_recurrence(const HPFloat& R, int count);

/// Monic generalized Laguerre coefficients b_k = 2k+gamma+1, g_k = k(k+gamma)
/// for k = 0..count-1.
RecurrenceCoeffs laguerre_recurrence(const HPFloat& gamma, int count);

struct ChainStats {
  /// Smallest |Q_j| / max(1, |B_j|, |shift|) seen across all steps.
  HPFloat min_rel_pivot = HPFloat(1);
};

/// Multiplies the measure by (t - shift). The result has one coefficient
/// fewer than the input. Throws BreakdownError on a zero pivot.
RecurrenceCoeffs christoffel_step(const RecurrenceCoeffs& rc, const HPFloat& shift,
                                  int stage = 1, ChainStats* stats = nullptr);

/// Applies christoffel_step for each root in order.
RecurrenceCoeffs christoffel_chain(const RecurrenceCoeffs& base,
                                   const std::vector<HPFloat>& roots,
                                   ChainStats* stats = nullptr);

/// Recurrence of the Poisson measure of parameter R multiplied by
/// prod (t - roots_k), computed by the discretized Stieltjes procedure on a
/// truncated support. Slower than the chain, but never breaks down.
RecurrenceCoeffs stieltjes_charlier(const HPFloat& R, const std::vector<HPFloat>& roots,
                                    int count);

/// Number of eigenvalues of the leading n x n Jacobi matrix below x.
int eigen_count_below(const RecurrenceCoeffs& rc, int n, const HPFloat& x);

/// Gerschgorin interval of the leading n x n Jacobi matrix.
std::pair<HPFloat, HPFloat> gerschgorin(const RecurrenceCoeffs& rc, int n);

/// k-th smallest (1-based) zero of the degree-n polynomial, to within tol.
HPFloat tridiag_eigenvalue(const RecurrenceCoeffs& rc, int n, int k, const HPFloat& tol);

/// All zeros of the degree-n polynomial, ascending. A non-positive tol picks
/// a tolerance near the working precision.
std::vector<HPFloat> tridiag_eigenvalues(const RecurrenceCoeffs& rc, int n,
                                         const HPFloat& tol = HPFloat(0));

struct FloorSelection {
  long long floor = 0;
  /// Coarse position of the zero (to within 1/4).
  double approx = 0;
  /// The zero lies within `guard` of an integer.
  bool near_integer = false;
};

/// floor of the k-th zero of the degree-n polynomial, decided by exact
/// eigenvalue counts at integers.
FloorSelection eigenvalue_floor(const RecurrenceCoeffs& rc, int n, int k,
                                const HPFloat& guard);

/// Gauss rule from the recurrence: nodes are the zeros of p_n, weights
/// mass / sum_k p_k(x)^2 / (g_2 ... g_{k+1}).
Quadrature gauss_quadrature(const RecurrenceCoeffs& rc, int n, const HPFloat& total_mass);

/// Smallest zero of the degree-p generalized Laguerre polynomial.
HPFloat laguerre_smallest_zero(int p, const HPFloat& gamma);

/// B_j(R), the j-th moment of the Poisson measure.
HPFloat charlier_moment(int j, const HPFloat& R);

/// Integral of the polynomial with monomial coefficients `c` against the
/// Poisson measure of parameter R.
HPFloat charlier_integral(const std::vector<HPFloat>& c, const HPFloat& R);
HPFloat charlier_integral(const IntPoly& p, const HPFloat& R);

/// Monomial coefficients of prod (t - roots_k), lowest first.
std::vector<HPFloat> poly_from_roots(const std::vector<HPFloat>& roots);

}  // namespace otf
