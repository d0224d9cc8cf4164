#include <doctest.h>

#include <thread>

#include "otf/errors.hpp"
#include "otf/hpfloat.hpp"

using namespace otf;

TEST_CASE("default precision and guard") {
  CHECK(working_precision() == kDefaultPrecisionBits);
  {
    PrecisionGuard g(256);
    CHECK(working_precision() == 256);
    HPFloat x(1);
    CHECK(x.precision() == 256);
    {
      PrecisionGuard inner(64);
      CHECK(HPFloat(3).precision() == 64);
    }
    CHECK(working_precision() == 256);
  }
  CHECK(working_precision() == kDefaultPrecisionBits);
}

TEST_CASE("precision is per thread") {
  PrecisionGuard g(300);
  unsigned seen = 0;
  std::thread t([&] { seen = working_precision(); });
  t.join();
  CHECK(seen == kDefaultPrecisionBits);
  CHECK(working_precision() == 300);
}

TEST_CASE("arithmetic and comparisons") {
  HPFloat a(3), b(4);
  CHECK(a + b == HPFloat(7));
  CHECK(a - b == HPFloat(-1));
  CHECK(a * b == HPFloat(12));
  CHECK(b / HPFloat(2) == HPFloat(2));
  CHECK(a < b);
  CHECK(-a < HPFloat(0));
  CHECK(abs(-a) == a);
  CHECK(min(a, b) == a);
  CHECK(max(a, b) == b);
  CHECK(floor(HPFloat(2.75)) == HPFloat(2));
  CHECK(round(HPFloat(2.5)) == HPFloat(3));
  CHECK(ldexp(HPFloat(3), -1) == HPFloat(1.5));
  CHECK(pow(HPFloat(2), 10) == HPFloat(1024));
  CHECK(HPFloat(0).is_zero());
  CHECK(HPFloat(-2).sign() == -1);
}

TEST_CASE("sqrt 2 squared is 2 to working precision") {
  const HPFloat s = sqrt(HPFloat(2));
  CHECK(abs(s * s - HPFloat(2)) < epsilon_for(95));
  CHECK(abs(exp(log(HPFloat(7))) - HPFloat(7)) < epsilon_for(90));
}

TEST_CASE("exact conversions") {
  CHECK(HPFloat(0.375).to_rational() == Rational(3, 8));
  CHECK(HPFloat(Rational(1, 3)).to_rational() != Rational(1, 3));
  CHECK(HPFloat(BigInt("123456789012345678901234567")).to_rational() ==
        Rational(BigInt("123456789012345678901234567")));
  CHECK(HPFloat(-17).to_llong() == -17);
}

TEST_CASE("decimal strings round-trip at the same precision") {
  for (unsigned bits : {64u, 100u, 200u, 400u}) {
    PrecisionGuard g(bits);
    const HPFloat x = sqrt(HPFloat(3)) / HPFloat(7);
    const HPFloat y{std::string_view{x.str()}};
    CHECK(x == y);
  }
  CHECK(HPFloat(std::string_view{"12.5"}) == HPFloat(12.5));
  CHECK(HPFloat(1.5).str(3) == "1.5");
  CHECK_THROWS_AS(HPFloat(std::string_view{"1.2x"}), DomainError);
}
