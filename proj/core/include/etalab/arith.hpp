#pragma once

// Exact arithmetic helpers shared by every module: GMP-backed rationals,
// half-integers for eta exponents, and small number-theoretic functions.

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace etalab {

using BigInt = mpz_class;
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const BigInt& num, const BigInt& den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

BigInt floor(const Rational& r);
bool is_integer(const Rational& r);

/// True when r is an integer multiple of m (m > 0).
bool is_multiple_of(const Rational& r, std::int64_t m);

/// Second periodic Bernoulli polynomial {x}^2 - {x} + 1/6.
Rational bernoulli_p2(const Rational& x);

/// An element of (1/2)Z stored as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  constexpr HalfInteger(std::int64_t n) : twice_(2 * n) {}  // NOLINT: integers embed
  static constexpr HalfInteger from_twice(std::int64_t twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Requires is_integer().
  std::int64_t as_integer() const;
  Rational to_rational() const { return make_rational(twice_, 2); }
  std::string str() const;

  constexpr bool is_zero() const { return twice_ == 0; }
  constexpr bool positive() const { return twice_ > 0; }
  constexpr bool negative() const { return twice_ < 0; }
  constexpr HalfInteger abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInteger& operator-=(HalfInteger o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return a += b; }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return a -= b; }
  friend constexpr HalfInteger operator*(HalfInteger a, std::int64_t k) { return from_twice(a.twice_ * k); }
  friend constexpr HalfInteger operator*(std::int64_t k, HalfInteger a) { return a * k; }
  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

 private:
  std::int64_t twice_ = 0;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);  // throws out_of_range on overflow
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t ipow(std::int64_t base, unsigned exp);  // throws out_of_range on overflow

/// Sorted ascending positive divisors.
std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
bool is_prime(std::int64_t n);
/// Largest a with p^a | n (n != 0).
unsigned valuation(std::int64_t n, std::int64_t p);

/// Kronecker symbol (a/n), total on all integer pairs.
int kronecker(const BigInt& a, const BigInt& n);

}  // namespace etalab
