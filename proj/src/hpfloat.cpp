#include "otf/hpfloat.hpp"

#include <cmath>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "otf/errors.hpp"

namespace otf {

namespace {

thread_local unsigned tl_precision = kDefaultPrecisionBits;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

struct MpfrString {
  char* p;
  ~MpfrString() { mpfr_free_str(p); }
};

std::string format_mpfr(mpfr_srcptr x, int digits) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t exp10 = 0;
  MpfrString s{mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), x, kRnd)};
  std::string mant(s.p);
  bool neg = false;
  if (!mant.empty() && mant[0] == '-') {
    neg = true;
    mant.erase(0, 1);
  }
  // mant = d1 d2 ... dk with value 0.d1d2...dk * 10^exp10
  std::string out = neg ? "-" : "";
  const long k = static_cast<long>(mant.size());
  if (exp10 > 0 && exp10 <= k + 6) {
    if (exp10 >= k) {
      out += mant + std::string(static_cast<size_t>(exp10 - k), '0');
    } else {
      out += mant.substr(0, static_cast<size_t>(exp10)) + "." +
             mant.substr(static_cast<size_t>(exp10));
    }
  } else if (exp10 <= 0 && exp10 > -6) {
    out += "0." + std::string(static_cast<size_t>(-exp10), '0') + mant;
  } else {
    out += mant.substr(0, 1);
    if (k > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(exp10 - 1);
  }
  // Strip trailing zeros in the fractional part of fixed notation.
  if (out.find('e') == std::string::npos && out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

}  // namespace

unsigned working_precision() noexcept { return tl_precision; }

PrecisionGuard::PrecisionGuard(unsigned bits) noexcept : saved_(tl_precision) {
  tl_precision = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
}

PrecisionGuard::~PrecisionGuard() { tl_precision = saved_; }

HPFloat::HPFloat() {
  mpfr_init2(value_, tl_precision);
  mpfr_set_zero(value_, 1);
}

HPFloat::HPFloat(int v) : HPFloat(static_cast<long>(v)) {}

HPFloat::HPFloat(long v) {
  mpfr_init2(value_, tl_precision);
  mpfr_set_si(value_, v, kRnd);
}

HPFloat::HPFloat(long long v) : HPFloat(static_cast<long>(v)) {}

HPFloat::HPFloat(unsigned long v) {
  mpfr_init2(value_, tl_precision);
  mpfr_set_ui(value_, v, kRnd);
}

HPFloat::HPFloat(double v) {
  mpfr_init2(value_, tl_precision);
  mpfr_set_d(value_, v, kRnd);
}

HPFloat::HPFloat(const BigInt& v) {
  mpfr_init2(value_, tl_precision);
  mpfr_set_z(value_, v.backend().data(), kRnd);
}

HPFloat::HPFloat(const Rational& v) {
  mpfr_init2(value_, tl_precision);
  mpfr_set_q(value_, v.backend().data(), kRnd);
}

HPFloat::HPFloat(std::string_view decimal) {
  mpfr_init2(value_, tl_precision);
  std::string s(decimal);
  if (mpfr_set_str(value_, s.c_str(), 10, kRnd) != 0) {
    mpfr_clear(value_);
    throw DomainError("not a decimal number: '" + s + "'");
  }
}

HPFloat::HPFloat(const HPFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRnd);
}

HPFloat::HPFloat(HPFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

HPFloat& HPFloat::operator=(const HPFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

HPFloat& HPFloat::operator=(HPFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

HPFloat::~HPFloat() { mpfr_clear(value_); }

unsigned HPFloat::precision() const noexcept {
  return static_cast<unsigned>(mpfr_get_prec(value_));
}

HPFloat& HPFloat::operator+=(const HPFloat& o) {
  mpfr_add(value_, value_, o.value_, kRnd);
  return *this;
}

HPFloat& HPFloat::operator-=(const HPFloat& o) {
  mpfr_sub(value_, value_, o.value_, kRnd);
  return *this;
}

HPFloat& HPFloat::operator*=(const HPFloat& o) {
  mpfr_mul(value_, value_, o.value_, kRnd);
  return *this;
}

HPFloat& HPFloat::operator/=(const HPFloat& o) {
  mpfr_div(value_, value_, o.value_, kRnd);
  return *this;
}

HPFloat HPFloat::operator-() const {
  HPFloat r;
  mpfr_neg(r.value_, value_, kRnd);
  return r;
}

HPFloat operator+(const HPFloat& a, const HPFloat& b) {
  HPFloat r;
  mpfr_add(r.value_, a.value_, b.value_, kRnd);
  return r;
}

HPFloat operator-(const HPFloat& a, const HPFloat& b) {
  HPFloat r;
  mpfr_sub(r.value_, a.value_, b.value_, kRnd);
  return r;
}

HPFloat operator*(const HPFloat& a, const HPFloat& b) {
  HPFloat r;
  mpfr_mul(r.value_, a.value_, b.value_, kRnd);
  return r;
}

HPFloat operator/(const HPFloat& a, const HPFloat& b) {
  HPFloat r;
  mpfr_div(r.value_, a.value_, b.value_, kRnd);
  return r;
}

bool operator==(const HPFloat& a, const HPFloat& b) {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const HPFloat& a, const HPFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

int HPFloat::sign() const noexcept { return mpfr_sgn(value_); }

bool HPFloat::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }

bool HPFloat::is_finite() const noexcept { return mpfr_number_p(value_) != 0; }

double HPFloat::to_double() const noexcept { return mpfr_get_d(value_, kRnd); }

long long HPFloat::to_llong() const {
  if (!mpfr_fits_slong_p(value_, MPFR_RNDZ)) {
    throw DomainError("value does not fit a 64-bit integer: " + str(20));
  }
  return mpfr_get_si(value_, MPFR_RNDZ);
}

Rational HPFloat::to_rational() const {
  if (!is_finite()) throw DomainError("cannot convert non-finite value to rational");
  if (is_zero()) return Rational(0);
  BigInt mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.backend().data(), value_);
  Rational r(mant);
  if (e >= 0) {
    r *= Rational(BigInt(1) << static_cast<unsigned long>(e));
  } else {
    r /= Rational(BigInt(1) << static_cast<unsigned long>(-e));
  }
  return r;
}

std::string HPFloat::str() const {
  const int digits = static_cast<int>(std::ceil(precision() * 0.30102999566398120)) + 2;
  return format_mpfr(value_, digits);
}

std::string HPFloat::str(int digits) const {
  return format_mpfr(value_, digits < 1 ? 1 : digits);
}

HPFloat abs(const HPFloat& x) {
  HPFloat r;
  mpfr_abs(r.raw(), x.raw(), kRnd);
  return r;
}

HPFloat sqrt(const HPFloat& x) {
  HPFloat r;
  mpfr_sqrt(r.raw(), x.raw(), kRnd);
  return r;
}

HPFloat floor(const HPFloat& x) {
  HPFloat r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

HPFloat round(const HPFloat& x) {
  HPFloat r;
  mpfr_round(r.raw(), x.raw());
  return r;
}

HPFloat ldexp(const HPFloat& x, long e) {
  HPFloat r;
  mpfr_mul_2si(r.raw(), x.raw(), e, kRnd);
  return r;
}

HPFloat min(const HPFloat& a, const HPFloat& b) { return b < a ? b : a; }

HPFloat max(const HPFloat& a, const HPFloat& b) { return a < b ? b : a; }

HPFloat pow(const HPFloat& x, unsigned long e) {
  HPFloat r;
  mpfr_pow_ui(r.raw(), x.raw(), e, kRnd);
  return r;
}

HPFloat exp(const HPFloat& x) {
  HPFloat r;
  mpfr_exp(r.raw(), x.raw(), kRnd);
  return r;
}

HPFloat log(const HPFloat& x) {
  HPFloat r;
  mpfr_log(r.raw(), x.raw(), kRnd);
  return r;
}

HPFloat epsilon_for(unsigned bits) {
  return ldexp(HPFloat(1), -static_cast<long>(bits));
}

std::ostream& operator<<(std::ostream& os, const HPFloat& x) {
  const auto p = os.precision();
  return os << x.str(p > 0 ? static_cast<int>(p) : 6);
}

}  // namespace otf
