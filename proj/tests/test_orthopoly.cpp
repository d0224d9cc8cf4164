#include <doctest.h>

#include <cmath>
#include <random>

#include "otf/errors.hpp"
#include "otf/orthopoly.hpp"

using namespace otf;

namespace {

std::vector<HPFloat> hp(const std::vector<double>& v) {
  std::vector<HPFloat> out;
  for (double x : v) out.emplace_back(x);
  return out;
}

// int t^j Omega dmu_R via Touchard moments of the expanded product.
HPFloat omega_moment(int j, const std::vector<HPFloat>& roots, const HPFloat& R) {
  std::vector<HPFloat> c = poly_from_roots(roots);
  c.insert(c.begin(), static_cast<size_t>(j), HPFloat(0));
  return charlier_integral(c, R);
}

bool close(const HPFloat& a, const HPFloat& b, double rel) {
  return abs(a - b) <= HPFloat(rel) * max(HPFloat(1), abs(b));
}

}  // namespace

TEST_CASE("Charlier recurrence") {
  const RecurrenceCoeffs rc = charlier_recurrence(HPFloat(5), 3);
  CHECK(rc.b[0] == HPFloat(5));
  CHECK(rc.b[1] == HPFloat(6));
  CHECK(rc.b[2] == HPFloat(7));
  CHECK(rc.g[0] == HPFloat(0));
  CHECK(rc.g[1] == HPFloat(5));
  CHECK(rc.g[2] == HPFloat(10));
  CHECK(close(tridiag_eigenvalues(charlier_recurrence(HPFloat(2.5), 1), 1)[0], HPFloat(2.5), 1e-25));
  CHECK_THROWS_AS(charlier_recurrence(HPFloat(0), 2), DomainError);
  CHECK_THROWS_AS(charlier_recurrence(HPFloat(1), 0), DomainError);
}

TEST_CASE("Charlier degree 2 zeros match the quadratic formula") {
  for (double r : {0.3, 1.0, 2.75, 6.0, 17.5, 120.25}) {
    const HPFloat R(r);
    const auto z = tridiag_eigenvalues(charlier_recurrence(R, 2), 2);
    // t^2 - (2R+1) t + R^2
    const HPFloat disc = sqrt(HPFloat(4) * R + HPFloat(1));
    const HPFloat lo = (HPFloat(2) * R + HPFloat(1) - disc) / HPFloat(2);
    const HPFloat hi = (HPFloat(2) * R + HPFloat(1) + disc) / HPFloat(2);
    CHECK(close(z[0], lo, 1e-25));
    CHECK(close(z[1], hi, 1e-25));
  }
  const auto z = tridiag_eigenvalues(charlier_recurrence(HPFloat(6), 2), 2);
  CHECK(close(z[0], HPFloat(4), 1e-25));
  CHECK(close(z[1], HPFloat(9), 1e-25));
}

TEST_CASE("Gauss rule of the Poisson measure") {
  const Quadrature q1 = gauss_quadrature(charlier_recurrence(HPFloat(3.5), 1), 1, HPFloat(1));
  CHECK(close(q1.nodes[0], HPFloat(3.5), 1e-25));
  CHECK(close(q1.weights[0], HPFloat(1), 1e-28));

  // R = m - sqrt m: nodes m - 2 sqrt m + 1 and m, weights s/(2s-1), (s-1)/(2s-1).
  for (int s = 2; s <= 6; ++s) {
    const int m = s * s;
    const Quadrature q = gauss_quadrature(charlier_recurrence(HPFloat(m - s), 2), 2, HPFloat(1));
    CHECK(close(q.nodes[0], HPFloat(m - 2 * s + 1), 1e-25));
    CHECK(close(q.nodes[1], HPFloat(m), 1e-25));
    CHECK(close(q.weights[0], HPFloat(s) / HPFloat(2 * s - 1), 1e-25));
    CHECK(close(q.weights[1], HPFloat(s - 1) / HPFloat(2 * s - 1), 1e-25));
  }
}

TEST_CASE("Gauss rule reproduces Touchard moments") {
  for (double r : {0.7, 4.0, 13.3, 81.1972}) {
    const HPFloat R(r);
    for (int n = 1; n <= 7; ++n) {
      const Quadrature q = gauss_quadrature(charlier_recurrence(R, n), n, HPFloat(1));
      for (int j = 0; j <= 2 * n - 1; ++j) {
        HPFloat s(0);
        for (size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * pow(q.nodes[i], static_cast<unsigned long>(j));
        CHECK(close(s, charlier_moment(j, R), 1e-20));
      }
      for (const auto& w : q.weights) CHECK(w.sign() > 0);
    }
  }
}

TEST_CASE("one Christoffel pair matches the moment ratio") {
  for (double r : {5.0, 5.3, 9.75}) {
    const HPFloat R(r);
    const std::vector<HPFloat> roots = hp({1, 2});
    const RecurrenceCoeffs rc = christoffel_chain(charlier_recurrence(R, 4), roots);
    const HPFloat ratio = omega_moment(1, roots, R) / omega_moment(0, roots, R);
    CHECK(close(rc.b[0], ratio, 1e-25));
  }
}

TEST_CASE("Christoffel chain agrees with the discretized Stieltjes procedure") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rdist(0.5, 40.0);
  for (int trial = 0; trial < 12; ++trial) {
    const HPFloat R(rdist(rng));
    std::vector<HPFloat> roots;
    const long long q1 = static_cast<long long>(R.to_double() * 0.5);
    const long long q2 = q1 + 3 + trial % 4;
    roots = hp({static_cast<double>(q1), static_cast<double>(q1 + 1), static_cast<double>(q2),
                static_cast<double>(q2 + 1)});
    const int count = 3;
    RecurrenceCoeffs chain;
    try {
      chain = christoffel_chain(charlier_recurrence(R, count + 4), roots);
    } catch (const BreakdownError&) {
      continue;
    }
    const RecurrenceCoeffs st = stieltjes_charlier(R, roots, count);
    for (int j = 0; j < count; ++j) {
      CHECK(close(chain.b[static_cast<size_t>(j)], st.b[static_cast<size_t>(j)], 1e-20));
      if (j > 0) CHECK(close(chain.g[static_cast<size_t>(j)], st.g[static_cast<size_t>(j)], 1e-20));
    }
  }
}

TEST_CASE("Gauss rule of a transformed measure integrates P Omega") {
  // Two nodes integrate degree <= 3 exactly against mu_R^Omega.
  const HPFloat R(7.4);
  const std::vector<HPFloat> roots = hp({3, 4});
  const RecurrenceCoeffs rc = christoffel_chain(charlier_recurrence(R, 5), roots);
  const HPFloat mass = omega_moment(0, roots, R);
  const Quadrature q = gauss_quadrature(rc, 2, mass);
  for (int j = 0; j <= 3; ++j) {
    HPFloat s(0);
    for (size_t i = 0; i < 2; ++i) s += q.weights[i] * pow(q.nodes[i], static_cast<unsigned long>(j));
    CHECK(close(s, omega_moment(j, roots, R), 1e-20));
  }
}

TEST_CASE("exact breakdown at an integer Charlier zero") {
  // C_5(1; 5) = 0, so multiplying by (t - 1) needs a zero pivot at index 5.
  CHECK_THROWS_AS(christoffel_step(charlier_recurrence(HPFloat(5), 7), HPFloat(1)), BreakdownError);
  CHECK_NOTHROW(christoffel_step(charlier_recurrence(HPFloat(5), 5), HPFloat(1)));
  CHECK_THROWS_AS(christoffel_chain(charlier_recurrence(HPFloat(5), 2), hp({1, 2, 3})), DomainError);
}

TEST_CASE("full chain example via Stieltjes") {
  const HPFloat R(5);
  const std::vector<HPFloat> roots = hp({1, 2, 4, 5, 8, 9});
  const RecurrenceCoeffs st = stieltjes_charlier(R, roots, 1);
  CHECK(st.b[0].to_double() == doctest::Approx(12.4539).epsilon(5e-4 / 12.4539));
  CHECK(close(st.b[0], omega_moment(1, roots, R) / omega_moment(0, roots, R), 1e-25));
}

TEST_CASE("interlacing after every pair") {
  // (t - q)(t - q - 1) is non-negative on the integers, so the measure stays
  // positive after each pair of steps.
  const HPFloat R(12.3);
  RecurrenceCoeffs rc = charlier_recurrence(R, 10);
  for (double shift : {7.0, 13.0}) {
    for (int n = 2; n < rc.size(); ++n) {
      const auto a = tridiag_eigenvalues(rc, n - 1);
      const auto b = tridiag_eigenvalues(rc, n);
      for (int k = 0; k + 1 < n; ++k) {
        CHECK(b[static_cast<size_t>(k)] < a[static_cast<size_t>(k)]);
        CHECK(a[static_cast<size_t>(k)] < b[static_cast<size_t>(k) + 1]);
      }
    }
    rc = christoffel_step(christoffel_step(rc, HPFloat(shift)), HPFloat(shift + 1));
  }
}

TEST_CASE("zeros increase with R for a fixed annihilator") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rdist(3.0, 30.0);
  std::uniform_real_distribution<double> step(0.01, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = rdist(rng);
    const double r2 = r + step(rng);
    const long long q = static_cast<long long>(r / 2);
    const std::vector<HPFloat> roots = hp({static_cast<double>(q), static_cast<double>(q + 1)});
    const auto za = tridiag_eigenvalues(stieltjes_charlier(HPFloat(r), roots, 3), 3);
    const auto zb = tridiag_eigenvalues(stieltjes_charlier(HPFloat(r2), roots, 3), 3);
    for (size_t k = 0; k < 3; ++k) CHECK(za[k] < zb[k]);
  }
}

TEST_CASE("negative off-diagonal square is rejected") {
  RecurrenceCoeffs rc = charlier_recurrence(HPFloat(2), 3);
  rc.g[1] = HPFloat(-1);
  CHECK_THROWS_AS(tridiag_eigenvalues(rc, 3), DomainError);
}

TEST_CASE("eigenvalue floor") {
  const RecurrenceCoeffs rc = charlier_recurrence(HPFloat(6), 2);
  const FloorSelection a = eigenvalue_floor(rc, 2, 1, HPFloat(1e-8));
  CHECK(a.floor == 4);
  CHECK(a.near_integer);
  const FloorSelection b = eigenvalue_floor(charlier_recurrence(HPFloat(6.2), 2), 2, 2, HPFloat(1e-8));
  CHECK(b.floor == 9);
  CHECK_FALSE(b.near_integer);
}

TEST_CASE("Laguerre smallest zeros") {
  CHECK(close(laguerre_smallest_zero(1, HPFloat(4.5)), HPFloat(5.5), 1e-25));
  CHECK(laguerre_smallest_zero(3, HPFloat(15)).to_double() == doctest::Approx(11.0108).epsilon(5e-4 / 11.0108));
  CHECK(laguerre_smallest_zero(3, HPFloat(17)).to_double() == doctest::Approx(12.6118).epsilon(5e-4 / 12.6118));
  // Degree 2: x^2 - 2(g+2) x + (g+1)(g+2), smallest root (g+2) - sqrt(g+2).
  for (double g : {0.0, 1.5, 10.0}) {
    const HPFloat expect = HPFloat(g + 2) - sqrt(HPFloat(g + 2));
    CHECK(close(laguerre_smallest_zero(2, HPFloat(g)), expect, 1e-25));
  }
  for (int p = 1; p <= 6; ++p) {
    HPFloat prev = laguerre_smallest_zero(p, HPFloat(-0.5));
    for (double g : {0.0, 1.0, 3.5, 20.0, 95.0}) {
      const HPFloat cur = laguerre_smallest_zero(p, HPFloat(g));
      CHECK(prev < cur);
      prev = cur;
    }
  }
  CHECK_THROWS_AS(laguerre_smallest_zero(2, HPFloat(-1)), DomainError);
}
