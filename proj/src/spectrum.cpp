#include "otf/spectrum.hpp"

#include <algorithm>

#include "otf/errors.hpp"
#include "otf/sturm.hpp"

namespace otf {

namespace {

constexpr double kNearIntegerGuard = 1e-8;

std::vector<HPFloat> as_floats(const std::vector<long long>& v) {
  std::vector<HPFloat> out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

// Applies the pair (first, second) to rc; on breakdown tries the reverse
// order. Returns false if both orders break down.
bool apply_pair(RecurrenceCoeffs& rc, long long first, long long second, int stage,
                ChainStats& stats) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    ChainStats local = stats;
    try {
      RecurrenceCoeffs a = christoffel_step(rc, HPFloat(first), stage, &local);
      RecurrenceCoeffs b = christoffel_step(a, HPFloat(second), stage + 1, &local);
      rc = std::move(b);
      stats = local;
      return true;
    } catch (const BreakdownError&) {
      std::swap(first, second);
    }
  }
  return false;
}

struct Attempt {
  SpectrumEval ev;
  bool small_pivot = false;
};

Attempt evaluate_at(const PConfiguration& cfg, const Rational& Rq, unsigned bits) {
  PrecisionGuard guard(bits);
  const HPFloat R(Rq);
  const HPFloat band(kNearIntegerGuard);
  const int p = cfg.p();
  Attempt at;
  at.ev.bits = bits;
  RecurrenceCoeffs rc = charlier_recurrence(R, base_length(p));
  ChainStats stats;
  std::vector<long long> shifts;
  for (int k = 1; k < p; ++k) {
    const int d = p - k + 1;
    const FloorSelection sel = eigenvalue_floor(rc, d, cfg.entries[static_cast<size_t>(k - 1)], band);
    at.ev.near_integer = at.ev.near_integer || sel.near_integer;
    const long long q = sel.floor;
    if (q < 0) throw DegeneracyError("negative exponent in integral spectrum");
    for (long long s : shifts) {
      if (s == q || s == q + 1) {
        throw DegeneracyError("exponent pair collision at stage " + std::to_string(k));
      }
    }
    // Shift farther from the zero first: the nearer one is close to a zero of
    // the current degree-d polynomial and would give a tiny pivot.
    const bool near_low = sel.approx - static_cast<double>(q) < 0.5;
    const long long first = near_low ? q + 1 : q;
    const long long second = near_low ? q : q + 1;
    shifts.push_back(q);
    shifts.push_back(q + 1);
    if (!apply_pair(rc, first, second, 2 * k - 1, stats)) {
      rc = stieltjes_charlier(R, as_floats(shifts), rc.size() - 2);
    }
  }
  at.ev.spectrum.values = std::move(shifts);
  at.ev.rho = rc.b[0];
  at.small_pivot = stats.min_rel_pivot < epsilon_for(bits / 3);
  return at;
}

}  // namespace

bool PConfiguration::valid() const noexcept {
  const int pp = p();
  for (size_t k = 0; k < entries.size(); ++k) {
    const int limit = pp - static_cast<int>(k);  // p - (k+1) + 1
    if (entries[k] < 1 || entries[k] > limit) return false;
  }
  return true;
}

std::vector<long long> IntegralSpectrum::sorted() const {
  std::vector<long long> v = values;
  std::sort(v.begin(), v.end());
  return v;
}

int base_length(int p) { return 2 * p - 1; }

SpectrumEval evaluate_spectrum(const PConfiguration& cfg, const HPFloat& R) {
  if (!cfg.valid()) throw DomainError("invalid p-configuration");
  if (!(R.sign() > 0)) throw DomainError("R must be positive");
  if (cfg.p() == 1) {
    SpectrumEval ev;
    ev.rho = R;
    ev.bits = working_precision();
    return ev;
  }
  const Rational Rq = R.to_rational();
  unsigned bits = std::max(working_precision(), R.precision());
  Attempt at = evaluate_at(cfg, Rq, bits);
  while ((at.ev.near_integer || at.small_pivot) && bits < kMaxPrecisionBits) {
    bits = std::min(2 * bits, kMaxPrecisionBits);
    at = evaluate_at(cfg, Rq, bits);
  }
  return at.ev;
}

IntegralSpectrum integral_spectrum(const PConfiguration& cfg, const HPFloat& R, int p) {
  if (cfg.p() != p) throw DomainError("configuration length does not match p");
  return evaluate_spectrum(cfg, R).spectrum;
}

RecurrenceCoeffs transformed_recurrence(const HPFloat& R, const std::vector<long long>& shifts,
                                        int count) {
  if (count < 1) throw DomainError("coefficient count must be at least 1");
  const int total = count + static_cast<int>(shifts.size());
  RecurrenceCoeffs rc = charlier_recurrence(R, total);
  ChainStats stats;
  size_t i = 0;
  int stage = 1;
  for (; i + 1 < shifts.size(); i += 2, stage += 2) {
    if (!apply_pair(rc, shifts[i], shifts[i + 1], stage, stats)) {
      return stieltjes_charlier(R, as_floats(shifts), count);
    }
  }
  if (i < shifts.size()) {
    try {
      rc = christoffel_step(rc, HPFloat(shifts[i]), stage, &stats);
    } catch (const BreakdownError&) {
      return stieltjes_charlier(R, as_floats(shifts), count);
    }
  }
  if (stats.min_rel_pivot < epsilon_for(working_precision() / 3)) {
    return stieltjes_charlier(R, as_floats(shifts), count);
  }
  return rc;
}

HPFloat spectral_radius(const IntegralSpectrum& M, const HPFloat& R) {
  if (!(R.sign() > 0)) throw DomainError("R must be positive");
  if (M.values.empty()) return R;
  return transformed_recurrence(R, M.values, 1).b[0];
}

HPFloat spectral_radius_moments(const IntegralSpectrum& M, const HPFloat& R) {
  std::vector<HPFloat> om = poly_from_roots(as_floats(M.values));
  std::vector<HPFloat> tom(om.size() + 1, HPFloat(0));
  for (size_t i = 0; i < om.size(); ++i) tom[i + 1] = om[i];
  return charlier_integral(tom, R) / charlier_integral(om, R);
}

OptimalSpectrum optimal_spectrum(const PConfiguration& cfg, int m, const SpectrumSearchOptions& opts) {
  if (!cfg.valid()) throw DomainError("invalid p-configuration");
  const int p = cfg.p();
  if (m < 2 * p - 1) throw DomainError("optimal spectrum needs m >= 2p - 1");
  OptimalSpectrum out;
  if (p == 1) {
    out.r_lo = HPFloat(m);
    out.r_hi = HPFloat(m);
    return out;
  }
  const HPFloat target(m);
  const HPFloat lower = laguerre_smallest_zero(p, HPFloat(m - 2 * p + 1));
  const HPFloat upper = laguerre_smallest_zero(p, HPFloat(m - p));
  const HPFloat pad = HPFloat(1e-9) * max(HPFloat(1), upper);
  HPFloat hi = upper + pad;
  HPFloat lo = lower - pad;
  if (!(lo.sign() > 0)) lo = ldexp(lower, -1);

  // A pair collision at one R says nothing about neighbouring R, so a
  // degenerate evaluation point is replaced by another point of the bracket.
  auto eval = [&](const HPFloat& R) -> std::optional<SpectrumEval> {
    try {
      return evaluate_spectrum(cfg, R);
    } catch (const DegeneracyError&) {
      return std::nullopt;
    }
  };
  auto at_fraction = [](const HPFloat& a, const HPFloat& b, int j, int parts) {
    return a + (b - a) * HPFloat(j) / HPFloat(parts);
  };
  constexpr int kParts = 16;

  std::optional<SpectrumEval> elo;
  if (opts.lower_hint && *opts.lower_hint > lo && *opts.lower_hint < hi) {
    auto e = eval(*opts.lower_hint);
    if (e && e->rho <= target) {
      lo = *opts.lower_hint;
      elo = std::move(e);
    }
  }
  if (!elo) elo = eval(lo);
  for (int j = 1; !elo && j < kParts; ++j) {
    const HPFloat x = at_fraction(lo, hi, j, kParts);
    if ((elo = eval(x))) lo = x;
  }
  if (!elo) throw DegeneracyError("integral spectrum degenerate across the bracket");
  if (elo->rho > target) throw OutOfBracketError("spectral radius exceeds m at the lower bound");
  std::optional<SpectrumEval> ehi = eval(hi);
  for (int j = kParts - 1; !ehi && j > 0; --j) {
    const HPFloat x = at_fraction(lo, hi, j, kParts);
    if ((ehi = eval(x))) hi = x;
  }
  if (!ehi) throw DegeneracyError("integral spectrum degenerate across the bracket");
  if (ehi->rho < target) throw OutOfBracketError("spectral radius below m at the upper bound");

  const unsigned bits = working_precision();
  const HPFloat jump_width = epsilon_for(bits > 40 ? bits - 30 : 10) * max(HPFloat(1), hi);
  int iter = 0;
  out.near_integer = elo->near_integer || ehi->near_integer;
  static constexpr int kSplits[] = {8, 4, 12, 6, 10, 2, 14};
  while (!(elo->spectrum == ehi->spectrum)) {
    if (hi - lo <= jump_width) {
      out.spectrum = ehi->spectrum;
      out.alternate = elo->spectrum;
      out.r_lo = lo;
      out.r_hi = hi;
      out.iterations = iter;
      return out;
    }
    if (++iter > opts.max_iterations) {
      throw ConvergenceError("integral spectrum did not stabilise", lo.to_double(), hi.to_double());
    }
    HPFloat mid;
    std::optional<SpectrumEval> emid;
    for (int j : kSplits) {
      mid = at_fraction(lo, hi, j, kParts);
      if ((emid = eval(mid))) break;
    }
    if (!emid) throw DegeneracyError("integral spectrum degenerate inside the bracket");
    out.near_integer = out.near_integer || emid->near_integer;
    if (emid->rho < target) {
      lo = std::move(mid);
      elo = std::move(emid);
    } else {
      hi = std::move(mid);
      ehi = std::move(emid);
    }
  }
  out.spectrum = elo->spectrum;
  out.r_lo = lo;
  out.r_hi = hi;
  out.iterations = iter;
  return out;
}

RootEnclosure refine_root(const std::vector<long long>& nodes, const Rational& lo,
                          const Rational& hi, unsigned bits) {
  if (hi < lo) throw DomainError("empty bracket");
  RootEnclosure enc;
  enc.poly = normalize_sign(polar_h_poly(nodes, static_cast<int>(nodes.size())));
  const IntPoly sqf = square_free_part(enc.poly);
  const SturmSequence seq(sqf);
  const bool lo_root = eval_sign(sqf, lo) == 0;
  const int count = seq.count(lo, hi) + (lo_root ? 1 : 0);
  if (count == 0) throw BracketError("defining polynomial has no root in the bracket");
  if (count > 1) throw AmbiguityError("defining polynomial has several roots in the bracket");

  PrecisionGuard guard(bits);
  if (auto z = integer_root_in(sqf, lo, hi)) {
    enc.lo = enc.hi = Rational(*z);
    enc.exact = true;
    enc.value = HPFloat(*z);
    return enc;
  }
  RootInterval iv;
  if (lo_root) {
    iv = {lo, lo, true};
  } else {
    auto roots = isolate_roots(sqf, lo, hi);
    iv = roots.front();
  }
  Rational width(BigInt(1), BigInt(1) << bits);
  const Rational scale = ceil_rational(hi);
  if (scale > 1) width *= scale;
  iv = refine_interval(sqf, iv, width);
  enc.lo = iv.lo;
  enc.hi = iv.hi;
  enc.exact = iv.exact;
  enc.value = HPFloat((iv.lo + iv.hi) / 2);
  if (!enclosure_is_valid(enc)) throw BracketError("root enclosure failed validation");
  return enc;
}

bool enclosure_is_valid(const RootEnclosure& e) {
  if (e.hi < e.lo) return false;
  // The float value is the rounded midpoint; allow one rounding of slack.
  const Rational v = e.value.to_rational();
  const Rational slack = abs(v) / Rational(BigInt(1) << (e.value.precision() - 1));
  if (v < e.lo - slack || v > e.hi + slack) return false;
  const IntPoly sqf = square_free_part(e.poly);
  if (e.exact) return e.lo == e.hi && eval_sign(sqf, e.lo) == 0;
  const int a = eval_sign(sqf, e.lo);
  const int b = eval_sign(sqf, e.hi);
  if (a == 0 || b == 0 || a == b) return false;
  return SturmSequence(sqf).count(e.lo, e.hi) == 1;
}

}  // namespace otf
