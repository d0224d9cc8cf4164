#include "otf/exact.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "otf/errors.hpp"

namespace otf {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  c_.reserve(coeffs.size());
  for (long long v : coeffs) c_.emplace_back(v);
  trim();
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(int k, const BigInt& c) {
  if (k < 0) throw DomainError("negative monomial degree");
  std::vector<BigInt> v(static_cast<size_t>(k) + 1);
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::linear(const BigInt& a0, const BigInt& a1) {
  return IntPoly(std::vector<BigInt>{a0, a1});
}

BigInt IntPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<size_t>(k)];
}

const BigInt& IntPoly::leading() const {
  if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return c_.back();
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(r));
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

HPFloat IntPoly::eval(const HPFloat& x) const {
  HPFloat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += HPFloat(*it);
  }
  return acc;
}

std::string IntPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = c_[static_cast<size_t>(k)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag.str();
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

namespace {

// Triangular tables of Stirling numbers, grown row by row on demand.
struct StirlingTable {
  std::mutex mu;
  int cap = 64;
  std::vector<std::vector<BigInt>> second{{BigInt(1)}};
  std::vector<std::vector<BigInt>> first{{BigInt(1)}};
};

StirlingTable& table() {
  static StirlingTable t;
  return t;
}

std::vector<BigInt> next_second(const std::vector<BigInt>& row) {
  const size_t n = row.size();  // row index n-1 -> n
  std::vector<BigInt> out(n + 1);
  for (size_t k = 1; k <= n; ++k) {
    BigInt v = row[k - 1];
    if (k < n) v += row[k] * static_cast<long>(k);
    out[k] = v;
  }
  return out;
}

std::vector<BigInt> next_first(const std::vector<BigInt>& row) {
  // s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)
  const size_t n = row.size();
  std::vector<BigInt> out(n + 1);
  const long nm1 = static_cast<long>(n - 1);
  for (size_t k = 1; k <= n; ++k) {
    BigInt v = row[k - 1];
    if (k < n) v -= row[k] * nm1;
    out[k] = v;
  }
  return out;
}

std::vector<BigInt> stirling_row(int n, bool second_kind) {
  if (n < 0) throw DomainError("Stirling index must be non-negative");
  auto& t = table();
  std::vector<BigInt> row;
  {
    std::lock_guard lock(t.mu);
    auto& rows = second_kind ? t.second : t.first;
    const int limit = std::min(n, t.cap);
    while (static_cast<int>(rows.size()) <= limit) {
      rows.push_back(second_kind ? next_second(rows.back()) : next_first(rows.back()));
    }
    if (n <= t.cap) return rows[static_cast<size_t>(n)];
    row = rows[static_cast<size_t>(limit)];
  }
  for (int i = static_cast<int>(row.size()) - 1; i < n; ++i) {
    row = second_kind ? next_second(row) : next_first(row);
  }
  return row;
}

void check_indices(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("Stirling indices must be non-negative");
  if (k > n) throw DomainError("Stirling number requires k <= n");
}

}  // namespace

int set_stirling_memo_cap(int cap) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  const int old = t.cap;
  t.cap = std::max(cap, 0);
  return old;
}

BigInt stirling_second(int n, int k) {
  check_indices(n, k);
  return stirling_row(n, true)[static_cast<size_t>(k)];
}

BigInt stirling_first(int n, int k) {
  check_indices(n, k);
  return stirling_row(n, false)[static_cast<size_t>(k)];
}

IntPoly touchard(int n) {
  if (n < 0) throw DomainError("Touchard index must be non-negative");
  IntPoly b = IntPoly::constant(1);
  const IntPoly x = IntPoly::monomial(1);
  for (int i = 0; i < n; ++i) b = x * (b + b.derivative());
  return b;
}

IntPoly touchard_from_stirling(int n) {
  if (n < 0) throw DomainError("Touchard index must be non-negative");
  return IntPoly(stirling_row(n, true));
}

IntPoly falling_factorial(int n) {
  if (n < 0) throw DomainError("falling factorial degree must be non-negative");
  return IntPoly(stirling_row(n, false));
}

std::vector<BigInt> elementary_symmetric(const std::vector<long long>& nodes) {
  // Coefficients of prod (1 + u_i t), built one linear factor at a time.
  std::vector<BigInt> e(nodes.size() + 1);
  e[0] = 1;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const BigInt u(nodes[i]);
    for (size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * u;
  }
  return e;
}

IntPoly polar_h_poly(const std::vector<long long>& nodes, int n) {
  if (n < 0 || static_cast<size_t>(n) != nodes.size()) {
    throw DomainError("polar form needs exactly n nodes");
  }
  const auto e = elementary_symmetric(nodes);
  IntPoly h;
  for (int k = 0; k <= n; ++k) {
    IntPoly term = touchard(n - k) * e[static_cast<size_t>(k)];
    if ((n - k) % 2 != 0) term = -term;
    h += term;
  }
  return h;
}

IntPoly diagonal_h_poly(long long x, int n) {
  if (n < 0) throw DomainError("degree must be non-negative");
  IntPoly h;
  BigInt binom = 1;
  BigInt xpow = 1;
  for (int k = 0; k <= n; ++k) {
    IntPoly term = touchard(n - k) * (binom * xpow);
    if ((n - k) % 2 != 0) term = -term;
    h += term;
    binom = binom * (n - k) / (k + 1);
    xpow *= x;
  }
  return h;
}

int eval_sign(const IntPoly& p, const Rational& r) {
  if (p.is_zero()) return 0;
  const BigInt a = numerator(r);
  const BigInt b = denominator(r);
  // sign(sum c_i a^i b^{n-i}) = sign(p(a/b)) since b > 0.
  const auto& c = p.coeffs();
  BigInt acc = c.back();
  BigInt bpow = 1;
  for (int i = p.degree() - 1; i >= 0; --i) {
    bpow *= b;
    acc = acc * a + c[static_cast<size_t>(i)] * bpow;
  }
  return acc.sign();
}

IntPoly normalize_sign(const IntPoly& p) {
  if (p.is_zero() || p.leading() > 0) return p;
  return -p;
}

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("not a fraction: '" + s + "'");
  }
}

}  // namespace otf
