#include "etalab/arith.hpp"

#include <limits>
#include <numeric>

#include "etalab/error.hpp"

namespace etalab {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_parameter: return "invalid_parameter";
    case Errc::ring_mismatch: return "ring_mismatch";
    case Errc::not_invertible: return "not_invertible";
    case Errc::syntax: return "syntax";
    case Errc::invalid_exponent: return "invalid_exponent";
    case Errc::invalid_level: return "invalid_level";
    case Errc::invalid_group: return "invalid_group";
    case Errc::invalid_cusp: return "invalid_cusp";
    case Errc::not_modular: return "not_modular";
    case Errc::out_of_range: return "out_of_range";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::cap_exceeded: return "cap_exceeded";
  }
  return "unknown";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::invalid_parameter, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

bool is_multiple_of(const Rational& r, std::int64_t m) {
  if (!is_integer(r)) return false;
  return mpz_divisible_ui_p(r.get_num_mpz_t(), static_cast<unsigned long>(m)) != 0;
}

Rational bernoulli_p2(const Rational& x) {
  Rational frac = x - Rational(floor(x));
  Rational out = frac * frac - frac + Rational(1, 6);
  out.canonicalize();
  return out;
}

std::int64_t HalfInteger::as_integer() const {
  if (!is_integer()) throw Error(Errc::invalid_exponent, "exponent " + str() + " is not an integer");
  return twice_ / 2;
}

std::string HalfInteger::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(Errc::out_of_range, "64-bit integer overflow");
  return out;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  std::int64_t g = std::gcd(a, b);
  std::int64_t out = checked_mul(a / g, b);
  return out < 0 ? -out : out;
}

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw Error(Errc::invalid_parameter, "divisors of a non-positive integer");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n <= 0) throw Error(Errc::invalid_parameter, "phi of a non-positive integer");
  std::int64_t out = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    out -= out / p;
  }
  if (n > 1) out -= out / n;
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned valuation(std::int64_t n, std::int64_t p) {
  if (n == 0 || p < 2) throw Error(Errc::invalid_parameter, "valuation needs n != 0 and p >= 2");
  unsigned a = 0;
  while (n % p == 0) {
    n /= p;
    ++a;
  }
  return a;
}

int kronecker(const BigInt& a, const BigInt& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

}  // namespace etalab
