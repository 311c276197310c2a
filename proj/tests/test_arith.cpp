#include <doctest.h>

#include "etalab/arith.hpp"
#include "etalab/error.hpp"

using namespace etalab;

TEST_CASE("rationals are canonical") {
  CHECK(make_rational(6, 4) == Rational(3, 2));
  CHECK(make_rational(-6, -4) == Rational(3, 2));
  CHECK(to_string(make_rational(6, 3)) == "2");
  CHECK(to_string(make_rational(-1, 12)) == "-1/12");
  CHECK_THROWS_AS(make_rational(1, 0), Error);
  CHECK(floor(make_rational(-1, 2)) == -1);
  CHECK(floor(make_rational(7, 2)) == 3);
  CHECK(is_integer(make_rational(8, 4)));
  CHECK_FALSE(is_integer(make_rational(1, 3)));
  CHECK(is_multiple_of(make_rational(48, 1), 24));
  CHECK_FALSE(is_multiple_of(make_rational(53, 1), 24));
  CHECK_FALSE(is_multiple_of(make_rational(1, 2), 2));
}

TEST_CASE("second Bernoulli polynomial") {
  CHECK(bernoulli_p2(0) == Rational(1, 6));
  CHECK(bernoulli_p2(Rational(1, 2)) == Rational(-1, 12));
  CHECK(bernoulli_p2(Rational(1, 5)) == Rational(1, 150));
  for (int num = -30; num <= 30; ++num) {
    const Rational x = make_rational(num, 7);
    CHECK(bernoulli_p2(x + 1) == bernoulli_p2(x));
    CHECK(bernoulli_p2(-x) == bernoulli_p2(x));
    CHECK(bernoulli_p2(x) >= Rational(-1, 12));
    CHECK(bernoulli_p2(x) <= Rational(1, 6));
  }
}

TEST_CASE("half integers") {
  const HalfInteger h = HalfInteger::from_twice(3);
  CHECK(h.str() == "3/2");
  CHECK_FALSE(h.is_integer());
  CHECK(h.to_rational() == Rational(3, 2));
  CHECK((h + h).as_integer() == 3);
  CHECK((h * 2) == HalfInteger(3));
  CHECK((-h).negative());
  CHECK(HalfInteger(-4).abs() == HalfInteger(4));
  CHECK(HalfInteger(2).str() == "2");
  CHECK_THROWS_AS(h.as_integer(), Error);
  CHECK(HalfInteger(1) < h);
}

TEST_CASE("integer helpers") {
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(0, 5) == 5);
  CHECK(gcd(-4, 6) == 2);
  CHECK(lcm(4, 6) == 12);
  CHECK_THROWS_AS(lcm(std::int64_t{1} << 40, (std::int64_t{1} << 40) - 1), Error);
  CHECK_THROWS_AS(checked_mul(std::int64_t{1} << 62, 4), Error);
  CHECK(ipow(3, 4) == 81);
  CHECK_THROWS_AS(ipow(10, 19), Error);
  CHECK(divisors(18) == std::vector<std::int64_t>{1, 2, 3, 6, 9, 18});
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(36) == 12);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(valuation(18, 3) == 2);
  CHECK(valuation(18, 5) == 0);
}

TEST_CASE("Kronecker symbol") {
  CHECK(kronecker(-1, 5) == 1);
  CHECK(kronecker(2, 5) == -1);
  CHECK(kronecker(-4096, 5) == 1);
  CHECK(kronecker(3, 2) == -1);  // (3/2) = -1 since 3 = 3 mod 8
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(2, 4) == 0);
  CHECK(kronecker(5, -1) == 1);
  CHECK(kronecker(-5, -1) == -1);
}

TEST_CASE("error codes have names") {
  CHECK(std::string(errc_name(Errc::syntax)) == "syntax");
  CHECK(std::string(errc_name(Errc::budget_exceeded)) == "budget_exceeded");
  const ParseError e(Errc::syntax, 4, "expected ')'");
  CHECK(e.position() == 4);
  CHECK(e.code() == Errc::syntax);
}
