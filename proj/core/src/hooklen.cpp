#include "etalab/hooklen.hpp"

#include <algorithm>

#include "etalab/error.hpp"
#include "etalab/etaexpr.hpp"

namespace etalab {

namespace {

void visit(std::int64_t remaining, std::int64_t max_part, Partition& current,
           const std::function<void(const Partition&)>& fn) {
  if (remaining == 0) {
    fn(current);
    return;
  }
  for (std::int64_t part = std::min(remaining, max_part); part >= 1; --part) {
    current.parts.push_back(part);
    visit(remaining - part, part, current, fn);
    current.parts.pop_back();
  }
}

void check_sign(std::int64_t y) {
  if (y != 1 && y != -1) throw Error(Errc::invalid_parameter, "y must be 1 or -1");
}

// a *= (1 - c q^k) or a /= (1 - c q^k), c = +-1.
void mul_binomial(std::vector<BigInt>& a, std::size_t k, int c) {
  for (std::size_t i = a.size(); i-- > k;) {
    if (c > 0)
      a[i] -= a[i - k];
    else
      a[i] += a[i - k];
  }
}

void div_binomial(std::vector<BigInt>& a, std::size_t k, int c) {
  for (std::size_t i = k; i < a.size(); ++i) {
    if (c > 0)
      a[i] += a[i - k];
    else
      a[i] -= a[i - k];
  }
}

}  // namespace

std::int64_t Partition::size() const {
  std::int64_t s = 0;
  for (auto x : parts) s += x;
  return s;
}

void validate(const Partition& p) {
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (p.parts[i] < 1) throw Error(Errc::invalid_parameter, "parts must be positive");
    if (i && p.parts[i] > p.parts[i - 1]) throw Error(Errc::invalid_parameter, "parts must be nonincreasing");
  }
}

void for_each_partition(std::int64_t n, const std::function<void(const Partition&)>& fn) {
  if (n < 0) throw Error(Errc::invalid_parameter, "n must be nonnegative");
  Partition current;
  visit(n, n, current, fn);
}

std::vector<Partition> partitions_of(std::int64_t n, std::int64_t cap) {
  if (n > cap) throw Error(Errc::cap_exceeded, "n = " + std::to_string(n) + " exceeds the partition cap " + std::to_string(cap));
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

Partition conjugate(const Partition& p) {
  Partition c;
  if (p.parts.empty()) return c;
  c.parts.assign(static_cast<std::size_t>(p.parts.front()), 0);
  for (auto part : p.parts)
    for (std::int64_t j = 0; j < part; ++j) ++c.parts[static_cast<std::size_t>(j)];
  return c;
}

std::vector<std::int64_t> hook_multiset(const Partition& p) {
  validate(p);
  const Partition c = conjugate(p);
  std::vector<std::int64_t> hooks;
  hooks.reserve(static_cast<std::size_t>(p.size()));
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    for (std::int64_t j = 0; j < p.parts[i]; ++j)
      hooks.push_back(p.parts[i] - j + c.parts[static_cast<std::size_t>(j)] - static_cast<std::int64_t>(i) - 1);
  std::sort(hooks.begin(), hooks.end(), std::greater<>());
  return hooks;
}

std::vector<std::int64_t> hook_t(const Partition& p, std::int64_t t) {
  if (t < 1) throw Error(Errc::invalid_parameter, "t must be >= 1");
  std::vector<std::int64_t> out;
  for (auto h : hook_multiset(p))
    if (h % t == 0) out.push_back(h);
  return out;
}

HanSeries han_lhs(std::int64_t t, std::int64_t y, std::int64_t z, std::size_t T, std::int64_t cap) {
  check_sign(y);
  if (t < 1) throw Error(Errc::invalid_parameter, "t must be >= 1");
  if (static_cast<std::int64_t>(T) > cap)
    throw Error(Errc::cap_exceeded, "T = " + std::to_string(T) + " exceeds the partition cap " + std::to_string(cap));
  std::vector<Rational> coeffs(T + 1);
  for (std::size_t n = 0; n <= T; ++n) {
    Rational sum = 0;
    for_each_partition(static_cast<std::int64_t>(n), [&](const Partition& p) {
      BigInt num = 1, den = 1;
      for (auto h : hook_t(p, t)) {
        // y - t y z / h^2 = y (h^2 - t z) / h^2
        num *= BigInt(y) * (BigInt(h) * h - BigInt(t) * z);
        den *= BigInt(h) * h;
      }
      sum += make_rational(num, den);
    });
    sum.canonicalize();
    coeffs[n] = sum;
  }
  BigInt den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  QSeries::ExactCoeffs nums;
  nums.reserve(coeffs.size());
  for (const auto& c : coeffs) nums.push_back(c.get_num() * (den / c.get_den()));
  return {QSeries(std::move(nums)), den};
}

QSeries han_rhs_product(std::int64_t t, std::int64_t y, std::int64_t z, std::size_t T) {
  check_sign(y);
  if (t < 1) throw Error(Errc::invalid_parameter, "t must be >= 1");
  std::vector<BigInt> a(T + 1, BigInt(0));
  a[0] = 1;
  const auto ut = static_cast<std::size_t>(t);
  for (std::size_t n = 1; n * ut <= T; ++n) {
    for (std::int64_t i = 0; i < t; ++i) mul_binomial(a, n * ut, 1);
    const int c = (y == -1 && n % 2 == 1) ? -1 : 1;
    for (std::int64_t i = 0; i < (t - z > 0 ? t - z : z - t); ++i) {
      if (t - z > 0)
        div_binomial(a, n * ut, c);
      else
        mul_binomial(a, n * ut, c);
    }
  }
  for (std::size_t n = 1; n <= T; ++n) div_binomial(a, n, 1);
  return QSeries(std::move(a));
}

IdentityReport verify_identity(std::int64_t t, std::int64_t y, std::int64_t z, std::size_t T, std::int64_t cap) {
  IdentityReport r;
  const HanSeries lhs = han_lhs(t, y, z, T, cap);
  if (lhs.denominator != 1) {
    r.detail = "left side has denominator " + to_string(lhs.denominator);
    return r;
  }
  const QSeries direct = han_rhs_product(t, y, z, T);
  const QSeries eta = expand(normalize(build_named(y == 1 ? Family::han_y1 : Family::han_ym1, {t, z})), T,
                             CoefficientRing::exact());
  for (std::size_t n = 0; n <= T; ++n) {
    const BigInt c = lhs.numerators.coefficient(n);
    const char* side = c != direct.coefficient(n) ? "product" : c != eta.coefficient(n) ? "eta-quotient" : nullptr;
    if (side) {
      r.first_mismatch = n;
      r.detail = std::string("hook sum and ") + side + " differ at q^" + std::to_string(n);
      return r;
    }
  }
  r.ok = true;
  r.detail = "agree through q^" + std::to_string(T);
  return r;
}

}  // namespace etalab
