#include "otf/sturm.hpp"

#include <algorithm>

#include "otf/errors.hpp"

namespace otf {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  // b > 0
  BigInt q = a / b;
  if (q * b > a) q -= 1;
  return q;
}

}  // namespace

Rational floor_rational(const Rational& r) {
  return Rational(floor_div(numerator(r), denominator(r)));
}

Rational ceil_rational(const Rational& r) {
  return -floor_rational(-r);
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  const BigInt& lb = b.leading();
  const auto& bc = b.coeffs();
  int delta = a.degree() - db + 1;
  for (int k = a.degree(); k >= db; --k) {
    const BigInt lead = r[static_cast<size_t>(k)];
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<size_t>(k - db + j)] -= lead * bc[static_cast<size_t>(j)];
    }
    --delta;
  }
  // Any leftover power keeps the classical normalization lc(b)^(da-db+1).
  IntPoly out(std::move(r));
  while (delta-- > 0) out *= lb;
  return out;
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return abs(g);
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  const BigInt g = content(p);
  if (g == 1) return p;
  std::vector<BigInt> c = p.coeffs();
  for (auto& v : c) v /= g;
  return IntPoly(std::move(c));
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return {};
    throw DomainError("polynomial division is not exact");
  }
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  const BigInt& lb = b.leading();
  const auto& bc = b.coeffs();
  std::vector<BigInt> q(static_cast<size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const BigInt& lead = r[static_cast<size_t>(k)];
    if (lead == 0) continue;
    if (lead % lb != 0) throw DomainError("polynomial division is not exact");
    const BigInt t = lead / lb;
    q[static_cast<size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<size_t>(k - db + j)] -= t * bc[static_cast<size_t>(j)];
    }
  }
  for (const auto& c : r) {
    if (c != 0) throw DomainError("polynomial division is not exact");
  }
  return IntPoly(std::move(q));
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = primitive_part(a);
  IntPoly y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = primitive_part(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return normalize_sign(x);
}

IntPoly square_free_part(const IntPoly& p) {
  if (p.degree() <= 0) return normalize_sign(primitive_part(p));
  const IntPoly pp = primitive_part(p);
  const IntPoly g = poly_gcd(pp, pp.derivative());
  return normalize_sign(primitive_part(exact_quotient(pp, g)));
}

BigInt cauchy_bound(const IntPoly& p) {
  if (p.degree() <= 0) return 1;
  const BigInt lead = abs(p.leading());
  BigInt mx = 0;
  for (int i = 0; i < p.degree(); ++i) mx = std::max(mx, BigInt(abs(p.coeff(i))));
  return 1 + (mx + lead - 1) / lead;
}

SturmSequence::SturmSequence(const IntPoly& p) {
  const IntPoly s = square_free_part(p);
  chain_.push_back(s);
  if (s.degree() <= 0) return;
  chain_.push_back(primitive_part(s.derivative()));
  while (chain_.back().degree() > 0) {
    const IntPoly& a = chain_[chain_.size() - 2];
    const IntPoly& b = chain_.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) break;  // cannot happen for a square-free base
    // prem carries lc(b)^delta; undo its sign so the chain is -rem(a, b).
    const int delta = a.degree() - b.degree() + 1;
    const bool flip = b.leading() < 0 && delta % 2 != 0;
    r = primitive_part(r);
    if (!flip) r = -r;
    chain_.push_back(std::move(r));
  }
}

int SturmSequence::sign_changes(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = eval_sign(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const Rational& lo, const Rational& hi) const {
  if (hi <= lo) return 0;
  return sign_changes(lo) - sign_changes(hi);
}

namespace {

// Tightens a counted interval (lo, hi] with one root to the sign-change form.
RootInterval to_sign_change(const SturmSequence& s, Rational lo, Rational hi) {
  const IntPoly& p = s.base();
  if (eval_sign(p, hi) == 0) return {hi, hi, true};
  if (eval_sign(p, lo) == 0) {
    // The root at lo is excluded; step lo inward past it.
    Rational step = (hi - lo) / 2;
    for (;;) {
      const Rational t = lo + step;
      if (s.count(lo, t) == 0) {
        lo = t;
        break;
      }
      step /= 2;
    }
  }
  return {lo, hi, false};
}

}  // namespace

std::vector<RootInterval> isolate_roots(const IntPoly& p, const Rational& lo,
                                        const Rational& hi) {
  std::vector<RootInterval> out;
  if (p.is_zero()) throw DomainError("cannot isolate roots of the zero polynomial");
  if (p.degree() == 0 || hi <= lo) return out;
  const SturmSequence s(p);
  struct Job {
    Rational a, b;
    int c;
  };
  std::vector<Job> stack{{lo, hi, s.count(lo, hi)}};
  while (!stack.empty()) {
    Job j = std::move(stack.back());
    stack.pop_back();
    if (j.c == 0) continue;
    if (j.c == 1) {
      out.push_back(to_sign_change(s, j.a, j.b));
      continue;
    }
    const Rational mid = (j.a + j.b) / 2;
    const int left = s.count(j.a, mid);
    // Push right first so the left half is processed first.
    stack.push_back({mid, j.b, j.c - left});
    stack.push_back({j.a, mid, left});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

std::vector<RootInterval> isolate_positive_roots(const IntPoly& p) {
  const BigInt b = cauchy_bound(p);
  auto roots = isolate_roots(p, Rational(0), Rational(b));
  return roots;
}

RootInterval refine_interval(const IntPoly& sqf, RootInterval iv, const Rational& width) {
  if (iv.exact) return iv;
  int slo = eval_sign(sqf, iv.lo);
  if (slo == 0 || slo == eval_sign(sqf, iv.hi)) {
    throw BracketError("interval does not bracket a sign change");
  }
  while (iv.hi - iv.lo > width) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int sm = eval_sign(sqf, mid);
    if (sm == 0) return {mid, mid, true};
    if (sm == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

std::optional<BigInt> integer_root_in(const IntPoly& p, const Rational& lo, const Rational& hi,
                                      long max_scan) {
  const Rational a = ceil_rational(lo);
  const Rational b = floor_rational(hi);
  if (b < a) return std::nullopt;
  if (b - a + 1 > Rational(max_scan)) return std::nullopt;
  for (BigInt k = numerator(a); k <= numerator(b); ++k) {
    if (p.eval(k) == 0) return k;
  }
  return std::nullopt;
}

}  // namespace otf
