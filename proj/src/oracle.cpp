#include "otf/oracle.hpp"

#include <omp.h>

#include <exception>
#include <optional>

#include "otf/errors.hpp"
#include "otf/sturm.hpp"

namespace otf {

namespace {

struct Candidate {
  std::vector<long long> nodes;
  IntPoly poly;
  IntPoly sqf;
  RootInterval iv;
};

RootInterval halve(const IntPoly& sqf, const RootInterval& iv) {
  return refine_interval(sqf, iv, (iv.hi - iv.lo) / 2);
}

// Exact sign of g at the root of sqf isolated by iv; iv may be narrowed.
int certified_sign(const IntPoly& g, const IntPoly& sqf, RootInterval& iv) {
  if (g.is_zero()) return 0;
  if (iv.exact) return eval_sign(g, iv.lo);
  const IntPoly common = poly_gcd(sqf, g);
  if (common.degree() > 0 && SturmSequence(common).count(iv.lo, iv.hi) > 0) return 0;
  const SturmSequence sg(g);
  for (;;) {
    const int s = eval_sign(g, iv.lo);
    if (s != 0 && sg.count(iv.lo, iv.hi) == 0) return s;
    iv = halve(sqf, iv);
    if (iv.exact) return eval_sign(g, iv.lo);
  }
}

bool weights_nonnegative(const std::vector<long long>& nodes, int m, const IntPoly& sqf,
                         RootInterval& iv) {
  const int n = static_cast<int>(nodes.size());
  for (int k = 0; k < n; ++k) {
    std::vector<long long> swapped = nodes;
    swapped[static_cast<size_t>(k)] = m + 1;
    const IntPoly g = polar_h_poly(swapped, n);
    BigInt d = m + 1 - nodes[static_cast<size_t>(k)];
    for (int i = 0; i < n; ++i) {
      if (i != k) d *= nodes[static_cast<size_t>(i)] - nodes[static_cast<size_t>(k)];
    }
    if (certified_sign(g, sqf, iv) * d.sign() < 0) return false;
  }
  return true;
}

// -1, 0, +1 as the root of a is below, equal to, or above the root of b.
int compare_roots(Candidate& a, Candidate& b) {
  for (int round = 0;; ++round) {
    if (a.iv.hi < b.iv.lo) return -1;
    if (b.iv.hi < a.iv.lo) return 1;
    if (a.iv.exact && b.iv.exact) return a.iv.lo == b.iv.lo ? 0 : (a.iv.lo < b.iv.lo ? -1 : 1);
    if (round == 0) {
      const Rational lo = a.iv.lo > b.iv.lo ? a.iv.lo : b.iv.lo;
      const Rational hi = a.iv.hi < b.iv.hi ? a.iv.hi : b.iv.hi;
      const IntPoly common = poly_gcd(a.sqf, b.sqf);
      if (common.degree() > 0) {
        const int inside = SturmSequence(common).count(lo, hi) + (eval_sign(common, lo) == 0 ? 1 : 0);
        if (inside > 0) return 0;
      }
    }
    if (!a.iv.exact) a.iv = halve(a.sqf, a.iv);
    if (!b.iv.exact) b.iv = halve(b.sqf, b.iv);
  }
}

bool better(Candidate& a, Candidate& b) {
  const int c = compare_roots(a, b);
  if (c != 0) return c > 0;
  return a.nodes < b.nodes;
}

std::optional<Candidate> best_for_nodes(const std::vector<long long>& nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  Candidate c;
  c.nodes = nodes;
  c.poly = polar_h_poly(nodes, n);
  c.sqf = square_free_part(c.poly);
  auto roots = isolate_positive_roots(c.sqf);
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    RootInterval iv = *it;
    if (weights_nonnegative(nodes, m, c.sqf, iv)) {
      c.iv = iv;
      return c;
    }
  }
  return std::nullopt;
}

std::vector<std::vector<long long>> all_subsets(int m, int n) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) cur[static_cast<size_t>(i)] = i;
  for (;;) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == m - (n - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

void check_request(int m, int n, const OracleOptions& opts) {
  if (n < 1) throw DomainError("order n must be at least 1");
  if (m < n) throw DomainError("degree m must be at least the order n");
  if (opts.enforce_cap && (m > kOracleMaxM || n > kOracleMaxN)) {
    throw RefusalError("brute force is limited to m <= " + std::to_string(kOracleMaxM) +
                       " and n <= " + std::to_string(kOracleMaxN));
  }
}

ThresholdResult finish(Candidate best, int m, int n, unsigned bits) {
  PrecisionGuard guard(bits);
  ThresholdResult r;
  r.m = m;
  r.n = n;
  r.exponents = best.nodes;
  r.defining_poly = normalize_sign(best.poly);
  RootInterval iv = best.iv;
  if (!iv.exact) {
    if (auto z = integer_root_in(best.sqf, iv.lo, iv.hi)) iv = {Rational(*z), Rational(*z), true};
  }
  Rational width(BigInt(1), BigInt(1) << bits);
  const Rational scale = ceil_rational(iv.hi);
  if (scale > 1) width *= scale;
  iv = refine_interval(best.sqf, iv, width);
  r.enclosure.poly = r.defining_poly;
  r.enclosure.lo = iv.lo;
  r.enclosure.hi = iv.hi;
  r.enclosure.exact = iv.exact;
  r.enclosure.value = HPFloat((iv.lo + iv.hi) / 2);
  r.r_value = r.enclosure.value;
  const HPFloat R = r.r_value;
  for (int k = 0; k < n; ++k) {
    std::vector<long long> swapped = best.nodes;
    swapped[static_cast<size_t>(k)] = m + 1;
    BigInt d = m + 1 - best.nodes[static_cast<size_t>(k)];
    for (int i = 0; i < n; ++i) {
      if (i != k) d *= best.nodes[static_cast<size_t>(i)] - best.nodes[static_cast<size_t>(k)];
    }
    r.alphas.push_back(polar_h_poly(swapped, n).eval(R) / HPFloat(d));
  }
  r.derivation = Derivation::brute_force;
  r.precision_bits = bits;
  return r;
}

}  // namespace

ThresholdResult brute_force_threshold(int m, int n, const OracleOptions& opts) {
  check_request(m, n, opts);
  std::optional<Candidate> best;
  for (const auto& nodes : all_subsets(m, n)) {
    auto c = best_for_nodes(nodes, m);
    if (c && (!best || better(*c, *best))) best = std::move(c);
  }
  if (!best) throw CompletenessError("no feasible node set found");
  return finish(std::move(*best), m, n, opts.precision_bits);
}

ThresholdResult brute_force_threshold_parallel(int m, int n, const OracleOptions& opts) {
  check_request(m, n, opts);
  const auto subsets = all_subsets(m, n);
  const long total = static_cast<long>(subsets.size());
  std::optional<Candidate> best;
  std::exception_ptr failure;
  const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::optional<Candidate> local;
#pragma omp for schedule(dynamic, 16) nowait
    for (long i = 0; i < total; ++i) {
      try {
        auto c = best_for_nodes(subsets[static_cast<size_t>(i)], m);
        if (c && (!local || better(*c, *local))) local = std::move(c);
      } catch (...) {
#pragma omp critical(otf_oracle_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(otf_oracle_merge)
    {
      if (local && (!best || better(*local, *best))) best = std::move(local);
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (!best) throw CompletenessError("no feasible node set found");
  return finish(std::move(*best), m, n, opts.precision_bits);
}

}  // namespace otf
