#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "otf/errors.hpp"
#include "otf/optimizer.hpp"
#include "otf/orthopoly.hpp"
#include "otf/sturm.hpp"

using namespace otf;

namespace {

double tol4(double v) { return 5e-4 / v; }

// Solves sum_k a_k (e_k)_l = R^l, l = 0..n-1, by Gaussian elimination.
std::vector<HPFloat> solve_order_conditions(const std::vector<long long>& e, const HPFloat& R) {
  const size_t n = e.size();
  std::vector<std::vector<HPFloat>> a(n, std::vector<HPFloat>(n + 1));
  for (size_t l = 0; l < n; ++l) {
    for (size_t k = 0; k < n; ++k) {
      HPFloat f(1);
      for (size_t j = 0; j < l; ++j) f *= HPFloat(e[k] - static_cast<long long>(j));
      a[l][k] = f;
    }
    a[l][n] = pow(R, static_cast<unsigned long>(l));
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const HPFloat f = a[r][c] / a[c][c];
      for (size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<HPFloat> x(n);
  for (size_t k = 0; k < n; ++k) x[k] = a[k][n] / a[k][k];
  return x;
}

HPFloat alpha_sum(const ThresholdResult& r) {
  HPFloat s(0);
  for (const auto& a : r.alphas) s += a;
  return s;
}

}  // namespace

TEST_CASE("reference spot values") {
  CHECK(compute_threshold(10, 5).r_value.to_double() == doctest::Approx(4.8308).epsilon(tol4(4.8308)));
  CHECK(compute_threshold(15, 5).r_value.to_double() == doctest::Approx(8.5757).epsilon(tol4(8.5757)));
  CHECK(compute_threshold(20, 5).r_value.to_double() == doctest::Approx(12.5512).epsilon(tol4(12.5512)));
}

TEST_CASE("closed forms") {
  for (int m = 1; m <= 12; ++m) {
    const ThresholdResult r = compute_threshold(m, 1);
    CHECK(r.r_value == HPFloat(m));
    CHECK(r.derivation == Derivation::closed_form);
    CHECK(r.exponents == std::vector<long long>{m});
    CHECK(r.alphas[0] == HPFloat(1));
  }
  const ThresholdResult r16 = compute_threshold(16, 3);
  CHECK(r16.r_value == HPFloat(12));
  CHECK(r16.enclosure.exact);
  CHECK(r16.exponents == std::vector<long long>{9, 10, 16});
  CHECK(std::abs(r16.alphas[1].to_double()) < 1e-25);
  CHECK(has_pair_structure(r16));
}

TEST_CASE("even orders reduce to the odd order below") {
  const ThresholdResult odd = compute_threshold(15, 5);
  const ThresholdResult even = compute_threshold(16, 6);
  CHECK(even.derivation == Derivation::even_reduced);
  CHECK(even.r_value == odd.r_value);
  CHECK(even.enclosure.lo == odd.enclosure.lo);
  CHECK(even.enclosure.hi == odd.enclosure.hi);
  CHECK(even.defining_poly == odd.defining_poly);
  CHECK(even.m == 16);
  CHECK(even.n == 6);
  CHECK(even.exponents.front() == 0);
  CHECK(compute_threshold(9, 2).r_value == HPFloat(8));
}

TEST_CASE("build_phi_even from the first-order polynomial") {
  const int m = 7;
  const ThresholdResult e = build_phi_even(compute_threshold(m, 1));
  // 1/(m+1) + m/(m+1) (1 + x/m)^{m+1}
  CHECK(e.exponents == std::vector<long long>{0, m + 1});
  CHECK(abs(e.alphas[0] - HPFloat(1) / HPFloat(m + 1)) < HPFloat(1e-28));
  CHECK(abs(e.alphas[1] - HPFloat(m) / HPFloat(m + 1)) < HPFloat(1e-28));
  CHECK(e.r_value == HPFloat(m));
  CHECK_THROWS_AS(build_phi_even(e), DomainError);
}

TEST_CASE("reference polynomials and coefficients") {
  const ThresholdResult a = compute_threshold(100, 5);
  CHECK(a.defining_poly == IntPoly{-3271262400LL, 201456936, -5001012, 62544, -394, 1});
  const double expect_a[] = {0.1188, 0.0765, 0.2095, 0.4539, 0.1413};
  for (size_t k = 0; k < 5; ++k) CHECK(a.alphas[k].to_double() == doctest::Approx(expect_a[k]).epsilon(tol4(expect_a[k])));

  const ThresholdResult b = compute_threshold(200, 5);
  CHECK(b.exponents == std::vector<long long>{154, 155, 176, 177, 200});
  const auto solved = [&] {
    PrecisionGuard g(300);
    return solve_order_conditions(b.exponents, HPFloat(b.enclosure.lo));
  }();
  for (size_t k = 0; k < 5; ++k) CHECK(std::abs(b.alphas[k].to_double() - solved[k].to_double()) <= 5e-4);
  CHECK(b.defining_poly == IntPoly{-148719648000LL, 4303437600LL, -49988400, 291352, -852, 1});

  const ThresholdResult c = compute_threshold(14, 7);
  CHECK(c.exponents == std::vector<long long>{2, 3, 5, 6, 9, 10, 14});
  const ThresholdResult d = compute_threshold(15, 7);
  CHECK(d.exponents == std::vector<long long>{2, 3, 6, 7, 10, 11, 15});
  CHECK(c.defining_poly == IntPoly{-226800, 189360, -75960, 19080, -3260, 380, -28, 1});
  CHECK(d.defining_poly == IntPoly{-415800, 340200, -132300, 31500, -4956, 516, -33, 1});
}

TEST_CASE("compute_alphas") {
  // p = 1: nodes (m, m+1), one quadrature node at R; the weight on m is
  // (m + 1 - R), which is 1 exactly at R = m.
  for (double r : {6.5, 9.0}) {
    const HPFloat R(r);
    const Quadrature q = gauss_quadrature(charlier_recurrence(R, 1), 1, HPFloat(1));
    const auto al = compute_alphas(IntegralSpectrum{}, 9, R, q);
    REQUIRE(al.size() == 1);
    CHECK(abs(al[0] - HPFloat(10 - r)) < HPFloat(1e-25));
  }
}

TEST_CASE("configuration lists") {
  CHECK(configuration_list(1).size() == 1);
  CHECK(configuration_list(1)[0].entries.empty());
  const auto two = configuration_list(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].entries == std::vector<int>{1});
  CHECK(two[1].entries == std::vector<int>{2});
  for (int p = 1; p <= 6; ++p) {
    const auto lex = configuration_list(p);
    int expect = 1;
    for (int k = 1; k < p; ++k) expect *= p - k + 1;
    CHECK(static_cast<int>(lex.size()) == expect);
    CHECK(lex[0].entries == std::vector<int>(static_cast<size_t>(p - 1), 1));
    std::set<std::vector<int>> seen;
    for (const auto& c : lex) {
      CHECK(c.valid());
      seen.insert(c.entries);
    }
    CHECK(static_cast<int>(seen.size()) == expect);
    CHECK(std::is_sorted(lex.begin(), lex.end(),
                         [](const PConfiguration& a, const PConfiguration& b) { return a.entries < b.entries; }));
    const auto rnd = configuration_list(p, ConfigOrder::random, 42);
    CHECK(rnd.size() == lex.size());
    CHECK(rnd[0] == lex[0]);
    std::set<std::vector<int>> seen2;
    for (const auto& c : rnd) seen2.insert(c.entries);
    CHECK(seen2 == seen);
    CHECK(configuration_list(p, ConfigOrder::random, 42) == rnd);
  }
}

TEST_CASE("search mode does not change the answer") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{15, 7}, {30, 9}, {40, 11}}) {
    const ThresholdResult base = compute_threshold(m, n);
    ComputeOptions par;
    par.jobs = 4;
    const ThresholdResult p = compute_threshold(m, n, par);
    CHECK(p.r_value == base.r_value);
    CHECK(p.configuration == base.configuration);
    ComputeOptions rnd;
    rnd.order = ConfigOrder::random;
    rnd.seed = 99;
    const ThresholdResult r = compute_threshold(m, n, rnd);
    CHECK(abs(r.r_value - base.r_value) < HPFloat(1e-25));
  }
}

TEST_CASE("result invariants on a small sweep") {
  for (int n : {3, 5, 7}) {
    for (int m = n; m <= n + 12; ++m) {
      const ThresholdResult r = compute_threshold(m, n);
      CHECK(has_pair_structure(r));
      CHECK(abs(alpha_sum(r) - HPFloat(1)) < HPFloat(1e-25));
      CHECK(r.exponents.back() == m);
      CHECK(r.alphas.back().sign() > 0);
      const ThresholdBounds b = threshold_bounds(m, n);
      CHECK(b.lower <= r.r_value);
      CHECK(r.r_value <= b.upper * (HPFloat(1) + HPFloat(1e-25)));
      CHECK(r.r_value.sign() > 0);
      CHECK(r.r_value <= HPFloat(m - n + 1));
      CHECK(enclosure_is_valid(r.enclosure));
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(compute_threshold(3, 5), DomainError);
  CHECK_THROWS_AS(compute_threshold(3, 0), DomainError);
  CHECK_THROWS_AS(threshold_bounds(10, 4), DomainError);
  CHECK(to_string(Derivation::even_reduced) == "even_reduced");
  CHECK(derivation_from_string("brute_force") == Derivation::brute_force);
  CHECK_THROWS_AS(derivation_from_string("other"), DomainError);
}
