#include "otf/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "otf/errors.hpp"
#include "otf/orthopoly.hpp"

namespace otf {

namespace {

unsigned check_bits(const HPFloat& R) { return std::max(R.precision(), kDefaultPrecisionBits); }

std::vector<double> random_start(int s, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::bernoulli_distribution keep(density);
  std::vector<double> u(static_cast<size_t>(s), 0.0);
  bool any = false;
  for (auto& x : u) {
    if (keep(rng)) {
      x = value(rng);
      any = true;
    }
  }
  if (!any) u[std::uniform_int_distribution<size_t>(0, u.size() - 1)(rng)] = 1.0;
  return u;
}

double min_of(const std::vector<double>& u) { return *std::min_element(u.begin(), u.end()); }

}  // namespace

StabilityPolynomial StabilityPolynomial::from_result(const ThresholdResult& r) {
  PrecisionGuard guard(r.precision_bits);
  StabilityPolynomial phi;
  phi.R = r.r_value;
  for (size_t k = 0; k < r.exponents.size(); ++k) phi.terms.emplace_back(r.exponents[k], r.alphas[k]);
  return phi;
}

long long StabilityPolynomial::max_exponent() const {
  long long e = 0;
  for (const auto& t : terms) e = std::max(e, t.first);
  return e;
}

std::vector<HPFloat> StabilityPolynomial::monomial_coeffs() const {
  PrecisionGuard guard(check_bits(R));
  std::vector<HPFloat> c(static_cast<size_t>(max_exponent() + 1), HPFloat(0));
  for (const auto& [e, a] : terms) {
    // alpha * C(e, j) / R^j
    HPFloat term = a;
    for (long long j = 0; j <= e; ++j) {
      c[static_cast<size_t>(j)] += term;
      term *= HPFloat(e - j) / (HPFloat(j + 1) * R);
    }
  }
  return c;
}

double StabilityPolynomial::eval(double x) const {
  const double r = R.to_double();
  double s = 0;
  for (const auto& [e, a] : terms) s += a.to_double() * std::pow(1.0 + x / r, static_cast<double>(e));
  return s;
}

std::complex<double> StabilityPolynomial::eval(std::complex<double> x) const {
  const double r = R.to_double();
  std::complex<double> s = 0;
  for (const auto& [e, a] : terms) s += a.to_double() * std::pow(1.0 + x / r, static_cast<int>(e));
  return s;
}

OrderReport check_order(const StabilityPolynomial& phi, int n, double tolerance) {
  PrecisionGuard guard(check_bits(phi.R));
  OrderReport rep;
  rep.tolerance = tolerance;
  const HPFloat tol(tolerance);
  for (int l = 0; l <= n; ++l) {
    HPFloat sum(0);
    for (const auto& [e, a] : phi.terms) {
      HPFloat ff = a;
      for (int j = 0; j < l; ++j) ff *= HPFloat(e - j) / phi.R;
      sum += ff;
    }
    HPFloat res = sum - HPFloat(1);
    if (rep.first_failure < 0 && abs(res) > tol) rep.first_failure = l;
    rep.residuals.push_back(std::move(res));
  }
  rep.pass = rep.first_failure < 0;
  return rep;
}

MonotonicReport check_abs_monotonic(const StabilityPolynomial& phi, int m, double floor) {
  MonotonicReport rep;
  const HPFloat f(floor);
  for (const auto& [e, a] : phi.terms) {
    if (a < f) {
      rep.offending.push_back(e);
      rep.offending_values.push_back(a);
    }
  }
  rep.max_exponent = phi.max_exponent();
  rep.degree_ok = rep.max_exponent <= m;
  rep.pass = rep.offending.empty() && rep.degree_ok;
  return rep;
}

MonotonicReport check_abs_monotonic_monomial(const std::vector<HPFloat>& c, const HPFloat& R,
                                             double floor) {
  // The alternating sums below cancel heavily; give them headroom.
  PrecisionGuard guard(4 * check_bits(R));
  MonotonicReport rep;
  const HPFloat f(floor);
  const HPFloat minus_r = -R;
  const long long deg = static_cast<long long>(c.size()) - 1;
  for (long long k = 0; k <= deg; ++k) {
    HPFloat d(0);
    HPFloat binom(1);
    HPFloat power(1);
    for (long long j = k; j <= deg; ++j) {
      d += c[static_cast<size_t>(j)] * binom * power;
      binom = binom * HPFloat(j + 1) / HPFloat(j + 1 - k);
      power *= minus_r;
    }
    if (d < f) {
      rep.offending.push_back(k);
      rep.offending_values.push_back(d);
    }
  }
  rep.max_exponent = deg;
  rep.pass = rep.offending.empty();
  return rep;
}

MetzlerSystem::MetzlerSystem(std::vector<std::vector<double>> a) : a_(std::move(a)) {
  const size_t s = a_.size();
  if (s == 0) throw DomainError("empty system");
  for (size_t i = 0; i < s; ++i) {
    if (a_[i].size() != s) throw DomainError("matrix is not square");
    for (size_t j = 0; j < s; ++j) {
      if (i != j && a_[i][j] < 0) {
        throw DomainError("negative off-diagonal entry at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
    }
    if (a_[i][i] <= 0) alpha_ = std::max(alpha_, -a_[i][i]);
  }
}

MetzlerSystem MetzlerSystem::upwind(int s, double alpha) {
  if (s < 1) throw DomainError("dimension must be positive");
  std::vector<std::vector<double>> a(static_cast<size_t>(s), std::vector<double>(static_cast<size_t>(s), 0.0));
  for (int i = 0; i < s; ++i) {
    a[static_cast<size_t>(i)][static_cast<size_t>(i)] = -alpha;
    if (i > 0) a[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] = alpha;
  }
  return MetzlerSystem(std::move(a));
}

std::vector<double> apply_phi(const StabilityPolynomial& phi, const MetzlerSystem& sys, double h,
                              const std::vector<double>& u) {
  const auto& a = sys.matrix();
  const size_t s = a.size();
  const double ratio = h / phi.R.to_double();
  std::vector<std::vector<double>> b = a;
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = 0; j < s; ++j) b[i][j] *= ratio;
    b[i][i] += 1.0;
  }
  std::vector<double> coef(static_cast<size_t>(phi.max_exponent() + 1), 0.0);
  for (const auto& [e, al] : phi.terms) coef[static_cast<size_t>(e)] += al.to_double();

  std::vector<double> v = u, next(s), out(s, 0.0);
  for (size_t k = 0; k < coef.size(); ++k) {
    if (k > 0) {
      for (size_t i = 0; i < s; ++i) {
        double acc = 0;
        for (size_t j = 0; j < s; ++j) acc += b[i][j] * v[j];
        next[i] = acc;
      }
      v.swap(next);
    }
    if (coef[k] != 0) {
      for (size_t i = 0; i < s; ++i) out[i] += coef[k] * v[i];
    }
  }
  return out;
}

PositivityReport positivity_demo(const StabilityPolynomial& phi, const MetzlerSystem& sys,
                                 const PositivityOptions& opts) {
  PositivityReport rep;
  const double alpha = sys.alpha();
  if (alpha <= 0) throw DomainError("system has no dissipative diagonal entry");
  const double r = phi.R.to_double();
  rep.h = r / alpha;
  rep.steps = opts.steps;
  rep.trials = opts.trials;

  std::vector<double> mins(static_cast<size_t>(opts.trials), std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(static)
  for (int t = 0; t < opts.trials; ++t) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(t));
    std::vector<double> u = random_start(sys.dimension(), 0.5, rng);
    double lowest = min_of(u);
    for (int k = 0; k < opts.steps; ++k) {
      u = apply_phi(phi, sys, rep.h, u);
      lowest = std::min(lowest, min_of(u));
    }
    mins[static_cast<size_t>(t)] = lowest;
  }
  rep.min_component = mins.empty() ? 0.0 : *std::min_element(mins.begin(), mins.end());
  rep.preserved = rep.min_component >= -opts.band;

  const MetzlerSystem adversary = MetzlerSystem::upwind(sys.dimension(), alpha);
  rep.violation_h = (1.0 + opts.delta) * r / alpha;
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  rep.violation_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < opts.violation_trials && !rep.bound_active; ++t) {
    const std::vector<double> u0 = random_start(adversary.dimension(), 0.25, rng);
    std::vector<double> u = u0;
    for (int k = 0; k < std::max(opts.steps, 1); ++k) {
      u = apply_phi(phi, adversary, rep.violation_h, u);
      const double lo = min_of(u);
      rep.violation_min = std::min(rep.violation_min, lo);
      if (lo < 0) {
        rep.bound_active = true;
        rep.counterexample = u0;
        break;
      }
    }
  }
  return rep;
}

ContractivityReport contractivity_demo(const StabilityPolynomial& phi, double rho, int samples,
                                       std::uint64_t seed, double delta) {
  if (rho <= 0) throw DomainError("disc radius must be positive");
  ContractivityReport rep;
  rep.rho = rho;
  rep.samples = samples;
  const double r = phi.R.to_double();
  rep.h = r / rho;
  rep.violation_h = (1.0 + delta) * r / rho;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::complex<double>> lambdas;
  lambdas.emplace_back(-2.0 * rho, 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 1; i < samples; ++i) {
    // Half the samples on the boundary circle, where the gain peaks.
    const double radius = (i % 2 == 0) ? rho : rho * std::sqrt(unit(rng));
    const double angle = 2 * pi * unit(rng);
    lambdas.emplace_back(-rho + radius * std::cos(angle), radius * std::sin(angle));
  }
  for (const auto& l : lambdas) {
    rep.max_gain = std::max(rep.max_gain, std::abs(phi.eval(rep.h * l)));
    rep.violation_gain = std::max(rep.violation_gain, std::abs(phi.eval(rep.violation_h * l)));
  }
  rep.contractive = rep.max_gain <= 1.0 + 1e-12;
  return rep;
}

IntPoly random_nonnegative_poly(int m, int n, std::mt19937_64& rng) {
  const IntPoly t = IntPoly::monomial(1);
  auto pick = [&](long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  };
  IntPoly total;
  if (n >= 1 && pick(0, 1) == 0) {
    // Same shape as the extremal witness: (m - t) times consecutive pairs.
    IntPoly f = IntPoly::linear(m, -1);
    for (int k = 0; k + 2 <= n - 1; k += 2) {
      const long long q = pick(0, std::max(0, m - 1));
      f = f * IntPoly::linear(-q, 1) * IntPoly::linear(-q - 1, 1);
    }
    total = f;
  }
  const int pieces = static_cast<int>(pick(total.is_zero() ? 1 : 0, 2));
  for (int piece = 0; piece < pieces; ++piece) {
    const int degree = static_cast<int>(pick(0, n));
    IntPoly f = IntPoly::constant(pick(1, 9));
    while (f.degree() < degree) {
      const bool two = degree - f.degree() >= 2 && pick(0, 2) > 0;
      if (two) {
        const long long a = pick(-1, m);
        if (pick(0, 1) == 0) {
          f = f * IntPoly::linear(-a, 1) * IntPoly::linear(-a - 1, 1);
        } else {
          f = f * IntPoly::linear(-a, 1) * IntPoly::linear(-a, 1);
        }
      } else {
        switch (pick(0, 2)) {
          case 0: f = f * IntPoly::linear(m, -1); break;
          case 1: f = f * IntPoly::linear(pick(0, 3), 1); break;
          default: f = f * t; break;
        }
      }
    }
    total += f;
  }
  for (int k = 0; k <= m; ++k) {
    if (total.eval(BigInt(k)) < 0) throw std::logic_error("generator produced a negative value");
  }
  return total;
}

FarkasReport farkas_check(int m, int n, const HPFloat& R, int trials, std::uint64_t seed) {
  PrecisionGuard guard(check_bits(R));
  FarkasReport rep;
  rep.R = R;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  bool first = true;
  for (int i = 0; i < trials; ++i) {
    const IntPoly f = random_nonnegative_poly(m, n, rng);
    const HPFloat v = charlier_integral(f, R);
    if (first || v < rep.min_integral) rep.min_integral = v;
    first = false;
    if (v.sign() < 0) {
      ++rep.negative;
      if (!rep.counterexample) rep.counterexample = f;
    }
  }
  return rep;
}

IntPoly farkas_witness(const ThresholdResult& r) {
  if (r.n % 2 == 0 || r.exponents.size() != static_cast<size_t>(r.n) || r.exponents.back() != r.m) {
    throw DomainError("witness needs an odd-order result with n exponents ending at m");
  }
  IntPoly f = IntPoly::linear(r.m, -1);
  for (size_t k = 0; k + 1 < r.exponents.size(); ++k) f = f * IntPoly::linear(-r.exponents[k], 1);
  return f;
}

}  // namespace otf
