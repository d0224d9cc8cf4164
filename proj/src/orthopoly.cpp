#include "otf/orthopoly.hpp"

#include <algorithm>
#include <cmath>

#include "otf/errors.hpp"

namespace otf {

namespace {

HPFloat default_tol(const HPFloat& scale) {
  const unsigned bits = working_precision();
  return epsilon_for(bits > 12 ? bits - 8 : 4) * max(HPFloat(1), abs(scale));
}

void check_size(const RecurrenceCoeffs& rc, int n) {
  if (n < 1) throw DomainError("matrix size must be at least 1");
  if (n > rc.size()) throw DomainError("not enough recurrence coefficients");
  for (int j = 1; j < n; ++j) {
    if (rc.g[static_cast<size_t>(j)].sign() < 0) {
      throw DomainError("negative off-diagonal square: measure is not positive");
    }
  }
}

}  // namespace

RecurrenceCoeffs charlier_recurrence(const HPFloat& R, int count) {
  if (!(R.sign() > 0)) throw DomainError("Charlier parameter must be positive");
  if (count < 1) throw DomainError("coefficient count must be at least 1");
  RecurrenceCoeffs rc;
  rc.b.reserve(static_cast<size_t>(count));
  rc.g.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    rc.b.push_back(R + HPFloat(i));
    rc.g.push_back(R * HPFloat(i));
  }
  return rc;
}

RecurrenceCoeffs laguerre_recurrence(const HPFloat& gamma, int count) {
  if (!(gamma > HPFloat(-1))) throw DomainError("Laguerre parameter must exceed -1");
  if (count < 1) throw DomainError("coefficient count must be at least 1");
  RecurrenceCoeffs rc;
  for (int k = 0; k < count; ++k) {
    rc.b.push_back(HPFloat(2 * k + 1) + gamma);
    rc.g.push_back(HPFloat(k) * (HPFloat(k) + gamma));
  }
  return rc;
}

RecurrenceCoeffs christoffel_step(const RecurrenceCoeffs& rc, const HPFloat& shift, int stage,
                                  ChainStats* stats) {
  const int n = rc.size();
  if (n < 2) throw DomainError("Christoffel step needs at least two coefficients");
  const HPFloat cutoff = epsilon_for(working_precision() > 8 ? working_precision() - 4 : 4);
  RecurrenceCoeffs out;
  out.b.reserve(static_cast<size_t>(n - 1));
  out.g.reserve(static_cast<size_t>(n - 1));
  HPFloat e_prev(0);
  for (int j = 0; j + 1 < n; ++j) {
    const auto uj = static_cast<size_t>(j);
    HPFloat q = rc.b[uj] - e_prev - shift;
    const HPFloat scale = max(HPFloat(1), max(abs(rc.b[uj]), abs(shift)));
    const HPFloat rel = abs(q) / scale;
    if (rel <= cutoff) throw BreakdownError(stage, j + 1);
    if (stats && rel < stats->min_rel_pivot) stats->min_rel_pivot = rel;
    HPFloat e = rc.g[uj + 1] / q;
    out.b.push_back(shift + q + e);
    out.g.push_back(q * e_prev);
    e_prev = std::move(e);
  }
  return out;
}

RecurrenceCoeffs christoffel_chain(const RecurrenceCoeffs& base, const std::vector<HPFloat>& roots,
                                   ChainStats* stats) {
  if (base.size() < static_cast<int>(roots.size()) + 1) {
    throw DomainError("base recurrence too short for the requested chain");
  }
  RecurrenceCoeffs cur = base;
  int stage = 1;
  for (const auto& r : roots) cur = christoffel_step(cur, r, stage++, stats);
  return cur;
}

RecurrenceCoeffs stieltjes_charlier(const HPFloat& R, const std::vector<HPFloat>& roots,
                                    int count) {
  if (!(R.sign() > 0)) throw DomainError("Charlier parameter must be positive");
  if (count < 1) throw DomainError("coefficient count must be at least 1");
  // Doubled precision absorbs the cancellation of the discrete procedure.
  const HPFloat Rw = R;
  PrecisionGuard guard(std::min(2 * working_precision(), 2 * kMaxPrecisionBits));
  const HPFloat Rh(Rw.to_rational());
  // Poisson tail beyond R + k sqrt(R) is far below the working epsilon for
  // the k used here; the extra terms cover the growth of t^j and Omega.
  const double rd = Rh.to_double();
  double top_root = 0;
  for (const auto& r : roots) top_root = std::max(top_root, r.to_double());
  const long T = static_cast<long>(std::max(rd, top_root) + 30.0 * std::sqrt(rd + 1.0) +
                                   8.0 * (count + static_cast<int>(roots.size())) + 60.0);
  std::vector<HPFloat> w(static_cast<size_t>(T) + 1);
  std::vector<HPFloat> t(static_cast<size_t>(T) + 1);
  HPFloat pw = exp(-Rh);
  for (long i = 0; i <= T; ++i) {
    if (i > 0) pw = pw * Rh / HPFloat(i);
    HPFloat om(1);
    for (const auto& r : roots) om *= HPFloat(i) - HPFloat(r.to_rational());
    w[static_cast<size_t>(i)] = pw * om;
    t[static_cast<size_t>(i)] = HPFloat(i);
  }
  std::vector<HPFloat> p_prev(w.size(), HPFloat(0));
  std::vector<HPFloat> p_cur(w.size(), HPFloat(1));
  HPFloat norm_prev(1);
  RecurrenceCoeffs hi;
  for (int j = 0; j < count; ++j) {
    HPFloat norm(0);
    HPFloat tnorm(0);
    for (size_t i = 0; i < w.size(); ++i) {
      const HPFloat v = w[i] * p_cur[i] * p_cur[i];
      norm += v;
      tnorm += v * t[i];
    }
    if (!(norm.sign() > 0)) throw DomainError("transformed measure is not positive");
    HPFloat b = tnorm / norm;
    HPFloat g = j == 0 ? HPFloat(0) : norm / norm_prev;
    for (size_t i = 0; i < w.size(); ++i) {
      HPFloat next = (t[i] - b) * p_cur[i] - g * p_prev[i];
      p_prev[i] = std::move(p_cur[i]);
      p_cur[i] = std::move(next);
    }
    hi.b.push_back(std::move(b));
    hi.g.push_back(std::move(g));
    norm_prev = norm;
  }
  // Back to the caller's precision.
  RecurrenceCoeffs out;
  {
    PrecisionGuard back(Rw.precision());
    for (int j = 0; j < count; ++j) {
      out.b.emplace_back(hi.b[static_cast<size_t>(j)].to_rational());
      out.g.emplace_back(hi.g[static_cast<size_t>(j)].to_rational());
    }
  }
  return out;
}

int eigen_count_below(const RecurrenceCoeffs& rc, int n, const HPFloat& x) {
  const HPFloat tiny = epsilon_for(working_precision()) * (abs(x) + HPFloat(1));
  int neg = 0;
  HPFloat d = rc.b[0] - x;
  for (int j = 0;; ++j) {
    if (d.is_zero()) d = tiny;
    if (d.sign() < 0) ++neg;
    if (j + 1 >= n) break;
    const auto u = static_cast<size_t>(j + 1);
    d = rc.b[u] - x - rc.g[u] / d;
  }
  return neg;
}

std::pair<HPFloat, HPFloat> gerschgorin(const RecurrenceCoeffs& rc, int n) {
  check_size(rc, n);
  std::vector<HPFloat> off(static_cast<size_t>(n) + 1, HPFloat(0));
  for (int j = 1; j < n; ++j) off[static_cast<size_t>(j)] = sqrt(rc.g[static_cast<size_t>(j)]);
  HPFloat lo = rc.b[0];
  HPFloat hi = rc.b[0];
  for (int j = 0; j < n; ++j) {
    const auto u = static_cast<size_t>(j);
    const HPFloat r = off[u] + off[u + 1];
    lo = min(lo, rc.b[u] - r);
    hi = max(hi, rc.b[u] + r);
  }
  const HPFloat pad = (hi - lo) * HPFloat(1e-3) + HPFloat(1);
  return {lo - pad, hi + pad};
}

HPFloat tridiag_eigenvalue(const RecurrenceCoeffs& rc, int n, int k, const HPFloat& tol) {
  if (k < 1 || k > n) throw DomainError("eigenvalue index out of range");
  auto [lo, hi] = gerschgorin(rc, n);
  const HPFloat t = tol.sign() > 0 ? tol : default_tol(max(abs(lo), abs(hi)));
  while (hi - lo > t) {
    HPFloat mid = ldexp(lo + hi, -1);
    if (mid <= lo || mid >= hi) break;
    if (eigen_count_below(rc, n, mid) >= k) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
  }
  return ldexp(lo + hi, -1);
}

std::vector<HPFloat> tridiag_eigenvalues(const RecurrenceCoeffs& rc, int n, const HPFloat& tol) {
  check_size(rc, n);
  std::vector<HPFloat> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) out.push_back(tridiag_eigenvalue(rc, n, k, tol));
  return out;
}

FloorSelection eigenvalue_floor(const RecurrenceCoeffs& rc, int n, int k, const HPFloat& guard) {
  if (k < 1 || k > n) throw DomainError("eigenvalue index out of range");
  auto [lo, hi] = gerschgorin(rc, n);
  const HPFloat half(0.25);
  while (hi - lo > half) {
    HPFloat mid = ldexp(lo + hi, -1);
    if (eigen_count_below(rc, n, mid) >= k) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
  }
  // lam_k in [lo, hi), width <= 1/4: at most one integer candidate.
  HPFloat q = floor(lo);
  HPFloat q1 = q + HPFloat(1);
  if (q1 <= hi && eigen_count_below(rc, n, q1) < k) q = q1;
  FloorSelection sel;
  sel.floor = q.to_llong();
  sel.approx = ldexp(lo + hi, -1).to_double();
  const HPFloat z = round(ldexp(lo + hi, -1));
  if (abs(z - ldexp(lo + hi, -1)) <= half + guard) {
    sel.near_integer = eigen_count_below(rc, n, z - guard) < k &&
                       eigen_count_below(rc, n, z + guard) >= k;
  }
  return sel;
}

Quadrature gauss_quadrature(const RecurrenceCoeffs& rc, int n, const HPFloat& total_mass) {
  Quadrature q;
  q.nodes = tridiag_eigenvalues(rc, n);
  q.weights.reserve(q.nodes.size());
  for (const auto& x : q.nodes) {
    // sum_k p_k(x)^2 / (g_2 ... g_{k+1}) with monic p_k.
    HPFloat pm1(0);
    HPFloat p(1);
    HPFloat norm(1);
    HPFloat s(1);
    for (int k = 1; k < n; ++k) {
      const auto u = static_cast<size_t>(k);
      HPFloat next = (x - rc.b[u - 1]) * p - rc.g[u - 1] * pm1;
      pm1 = std::move(p);
      p = std::move(next);
      norm *= rc.g[u];
      s += p * p / norm;
    }
    q.weights.push_back(total_mass / s);
  }
  return q;
}

HPFloat laguerre_smallest_zero(int p, const HPFloat& gamma) {
  if (p < 1) throw DomainError("Laguerre degree must be at least 1");
  const RecurrenceCoeffs rc = laguerre_recurrence(gamma, p);
  return tridiag_eigenvalue(rc, p, 1, HPFloat(0));
}

HPFloat charlier_moment(int j, const HPFloat& R) { return touchard(j).eval(R); }

HPFloat charlier_integral(const std::vector<HPFloat>& c, const HPFloat& R) {
  HPFloat s(0);
  for (size_t j = 0; j < c.size(); ++j) s += c[j] * charlier_moment(static_cast<int>(j), R);
  return s;
}

HPFloat charlier_integral(const IntPoly& p, const HPFloat& R) {
  HPFloat s(0);
  for (int j = 0; j <= p.degree(); ++j) s += HPFloat(p.coeff(j)) * charlier_moment(j, R);
  return s;
}

std::vector<HPFloat> poly_from_roots(const std::vector<HPFloat>& roots) {
  std::vector<HPFloat> c{HPFloat(1)};
  for (const auto& r : roots) {
    std::vector<HPFloat> next(c.size() + 1, HPFloat(0));
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace otf
