#pragma once

// Property suites shared by the unit tests and the acceptance binary. Each
// check returns a list of human-readable failures; empty means it held.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "otf/errors.hpp"
#include "otf/optimizer.hpp"
#include "otf/orthopoly.hpp"
#include "otf/spectrum.hpp"
#include "otf/validate.hpp"

namespace otf::props {

using Failures = std::vector<std::string>;

inline std::string cell(int m, int n) {
  std::ostringstream os;
  os << "(" << m << "," << n << ")";
  return os.str();
}

/// Uniform p-configuration: n_k drawn from 1..p-k+1.
inline PConfiguration random_configuration(int p, std::mt19937_64& rng) {
  PConfiguration c;
  for (int k = 1; k < p; ++k) {
    std::uniform_int_distribution<int> d(1, p - k + 1);
    c.entries.push_back(d(rng));
  }
  return c;
}

/// Per-result invariants: pair structure, largest exponent m, sum alpha = 1,
/// order conditions 0..n, non-negative coefficients, bound sandwich (odd n)
/// and extremal Charlier-zero bounds on the exponents.
inline Failures result_invariants(const ThresholdResult& r) {
  Failures f;
  const std::string where = cell(r.m, r.n);
  if (r.n % 2 == 1 && !has_pair_structure(r)) f.push_back(where + " pair structure");
  if (r.exponents.empty() || r.exponents.back() != r.m) f.push_back(where + " largest exponent != m");
  HPFloat s(0);
  for (const auto& a : r.alphas) s += a;
  if (abs(s - HPFloat(1)) > HPFloat(1e-25)) f.push_back(where + " sum alpha = " + s.str(30));
  const StabilityPolynomial phi = StabilityPolynomial::from_result(r);
  const OrderReport ord = check_order(phi, r.n);
  if (!ord.pass) f.push_back(where + " order condition l=" + std::to_string(ord.first_failure));
  if (!check_abs_monotonic(phi, r.m).pass) f.push_back(where + " absolute monotonicity");
  if (r.n % 2 == 1) {
    const ThresholdBounds b = threshold_bounds(r.m, r.n);
    // Equality is attained at n = 3 (R = m - sqrt m is the upper bound).
    const HPFloat slack = HPFloat(1e-25) * r.r_value;
    if (!(b.lower - slack <= r.r_value && r.r_value <= b.upper + slack)) f.push_back(where + " bound sandwich");
    const int p = (r.n + 1) / 2;
    if (p >= 2) {
      const auto z = tridiag_eigenvalues(charlier_recurrence(r.r_value, p), p);
      // Both hold with equality at n = 3.
      const HPFloat tol(1e-20);
      if (HPFloat(r.exponents.back()) < z.back() - tol) f.push_back(where + " largest exponent below largest Charlier zero");
      if (HPFloat(r.exponents.front()) > z.front() + tol) f.push_back(where + " smallest exponent above smallest Charlier zero");
    }
  }
  return f;
}

/// Strictly increasing R_{m,n} across m = n..m_max, with per-result invariants.
inline Failures monotone_sweep(int n, int m_max) {
  Failures f;
  HPFloat prev(0);
  for (int m = n; m <= m_max; ++m) {
    const ThresholdResult r = compute_threshold(m, n);
    for (auto& s : result_invariants(r)) f.push_back(std::move(s));
    if (m > n && !(r.r_value > prev)) f.push_back(cell(m, n) + " not above " + cell(m - 1, n));
    prev = r.r_value;
  }
  return f;
}

/// Randomized (cfg, R, dR) triples with equal integral spectra at both ends:
/// rho(cfg, R + dR) > rho(cfg, R). Returns failures; `tested` counts the
/// cases that reached the comparison.
inline Failures spectral_radius_monotone(int cases, std::uint64_t seed, int& tested) {
  Failures f;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pdist(2, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  tested = 0;
  int attempts = 0;
  while (tested < cases && attempts < 50 * cases) {
    ++attempts;
    const int p = pdist(rng);
    const PConfiguration cfg = random_configuration(p, rng);
    const HPFloat R(2.0 * p + 120.0 * u(rng));
    double dr = 0.5 * u(rng) + 1e-6;
    SpectrumEval a, b;
    try {
      a = evaluate_spectrum(cfg, R);
      bool equal = false;
      for (int halve = 0; halve < 30 && !equal; ++halve, dr /= 2) {
        b = evaluate_spectrum(cfg, R + HPFloat(dr));
        equal = b.spectrum == a.spectrum;
      }
      if (!equal) continue;
    } catch (const DegeneracyError&) {
      continue;  // repeated shifts at this R
    } catch (const DomainError&) {
      continue;  // negative shifts
    }
    ++tested;
    if (!(b.rho > a.rho)) {
      std::ostringstream os;
      os << "rho not increasing at p=" << p << " R=" << R.str(20);
      f.push_back(os.str());
    }
  }
  if (tested < cases) f.push_back("only " + std::to_string(tested) + " usable cases");
  return f;
}

/// Fixed integer annihilator, R' > R: every zero of the transformed measure
/// moves right.
inline Failures zeros_monotone(int cases, std::uint64_t seed) {
  Failures f;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rdist(1.0, 50.0);
  std::uniform_real_distribution<double> step(1e-3, 3.0);
  for (int t = 0; t < cases; ++t) {
    const double r = rdist(rng);
    const double r2 = r + step(rng);
    std::vector<HPFloat> roots;
    const long long q = static_cast<long long>(r * 0.4);
    roots.emplace_back(q);
    roots.emplace_back(q + 1);
    if (t % 2 == 0) {
      roots.emplace_back(q + 4 + t % 5);
      roots.emplace_back(q + 5 + t % 5);
    }
    const int count = 1 + t % 4;
    const auto za = tridiag_eigenvalues(stieltjes_charlier(HPFloat(r), roots, count), count);
    const auto zb = tridiag_eigenvalues(stieltjes_charlier(HPFloat(r2), roots, count), count);
    for (int k = 0; k < count; ++k) {
      if (!(za[static_cast<size_t>(k)] < zb[static_cast<size_t>(k)])) {
        f.push_back("zero " + std::to_string(k) + " not increasing at R=" + std::to_string(r));
      }
    }
  }
  return f;
}

}  // namespace otf::props
