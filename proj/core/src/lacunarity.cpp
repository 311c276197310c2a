#include "etalab/lacunarity.hpp"

#include "etalab/error.hpp"
#include "etalab/qseries.hpp"
#include "json_util.hpp"

namespace etalab {

namespace {

BigInt big_pow(std::int64_t p, std::int64_t e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return out;
}

Rational rat(std::int64_t n) { return Rational(static_cast<long>(n)); }

// Shared front matter: prime check, choice of a, D.
bool prepare(LacunarityVerdict& v, const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a) {
  v.p = p;
  v.D = profile(nf).D;
  if (!is_prime(p)) {
    v.a = a.value_or(1);
    v.reason = "p_not_prime";
    return false;
  }
  if (a && *a < 1) {
    v.a = *a;
    v.reason = "a_not_positive";
    return false;
  }
  v.a = a ? *a : std::max<std::int64_t>(1, max_exponent_dividing(v.D, p));
  return true;
}

void decide(LacunarityVerdict& v) {
  if (v.D == 0 || max_exponent_dividing(v.D, v.p) < v.a) {
    v.reason = "pa_not_dividing_D";
  } else if (Rational(big_pow(v.p, 2 * v.a)) < v.bound_sq) {
    v.reason = "bound_not_met";
  } else {
    v.reason = "ok";
    v.satisfied = true;
  }
}

VerificationResult compare(const QSeries& lhs, const QSeries& rhs, std::size_t T) {
  VerificationResult r;
  if (lhs.prefix() != rhs.prefix()) {
    r.detail = "prefixes differ: " + to_string(lhs.prefix()) + " vs " + to_string(rhs.prefix());
    return r;
  }
  for (std::size_t n = 0; n <= T; ++n) {
    if (lhs.coefficient(n) != rhs.coefficient(n)) {
      r.first_mismatch = n;
      r.detail = "coefficient of q^" + std::to_string(n) + ": " + to_string(lhs.coefficient(n)) + " vs " +
                 to_string(rhs.coefficient(n)) + " in " + to_string(lhs.ring());
      return r;
    }
  }
  r.ok = true;
  r.detail = "agree through q^" + std::to_string(T) + " in " + to_string(lhs.ring());
  return r;
}

void check_companion_args(std::int64_t p, std::int64_t a, std::int64_t j) {
  if (!is_prime(p)) throw Error(Errc::invalid_parameter, std::to_string(p) + " is not prime");
  if (a < 1) throw Error(Errc::invalid_parameter, "a must be positive");
  if (j < 0) throw Error(Errc::invalid_parameter, "j must be nonnegative");
}

CoefficientRing congruence_ring(std::int64_t p, std::int64_t j) {
  return CoefficientRing::residue(static_cast<std::uint64_t>(ipow(p, static_cast<unsigned>(j + 1))));
}

}  // namespace

const char* criterion_name(Criterion c) { return c == Criterion::thm1 ? "thm1" : "thm3"; }

std::int64_t max_exponent_dividing(std::int64_t D, std::int64_t p) {
  if (D == 0 || p < 2) return 0;
  return static_cast<std::int64_t>(valuation(D, p));
}

LacunarityVerdict thm1_check(const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a) {
  LacunarityVerdict v;
  v.criterion = Criterion::thm1;
  if (!prepare(v, nf, p, a)) return v;
  if (nf.has_generalized()) {
    v.reason = "generalized_factors";
    return v;
  }
  if (!is_integer(profile(nf).weight)) {
    v.reason = "non_integer_weight";
    return v;
  }
  Rational num = 0, den = 0;
  for (const auto& t : nf.denominator) num += rat(checked_mul(t.delta, t.exponent));
  for (const auto& t : nf.numerator) den += make_rational(t.exponent, t.delta);
  if (den == 0) {
    v.reason = "empty_numerator";
    return v;
  }
  v.bound_sq = num / den;
  v.bound_sq.canonicalize();
  decide(v);
  return v;
}

LacunarityVerdict thm3_check(const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a) {
  LacunarityVerdict v;
  v.criterion = Criterion::thm3;
  if (!prepare(v, nf, p, a)) return v;

  Rational positivity = 0, num = 0;
  // ordinary factors count as zero-class factors with half the exponent
  for (const auto& t : nf.numerator) positivity += make_rational(t.exponent, 2 * t.delta);
  for (const auto& t : nf.denominator) num += make_rational(checked_mul(t.delta, t.exponent), 2);
  for (const auto& t : nf.generic_numerator) positivity -= rat(t.delta) * t.exponent.to_rational() / 2;
  for (const auto& t : nf.generic_denominator) num += rat(t.delta) * t.exponent.to_rational();
  for (const auto& t : nf.half_numerator) {
    positivity += t.exponent.to_rational() / rat(2 * t.delta);
    num += rat(t.delta) * t.exponent.to_rational();
  }
  for (const auto& t : nf.half_denominator) {
    positivity -= rat(t.delta) * t.exponent.to_rational() / 2;
    num += rat(t.delta) * t.exponent.to_rational() / 2;
  }
  for (const auto& t : nf.zero_numerator) positivity += t.exponent.to_rational() / rat(t.delta);
  for (const auto& t : nf.zero_denominator) num += rat(t.delta) * t.exponent.to_rational();
  positivity.canonicalize();
  v.positivity = positivity;
  if (positivity <= 0) {
    v.reason = "nonpositive_positivity";
    return v;
  }
  v.bound_sq = num / positivity;
  v.bound_sq.canonicalize();
  decide(v);
  return v;
}

LacunarityVerdict lacunarity_check(const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a) {
  return nf.has_generalized() ? thm3_check(nf, p, a) : thm1_check(nf, p, a);
}

Cor2Bounds cor2_bounds(std::int64_t t, std::int64_t z) {
  if (z < 1 || z >= t)
    throw Error(Errc::out_of_range, "need 1 <= z < t, got t = " + std::to_string(t) + ", z = " + std::to_string(z));
  if (z % 2 == 0) throw Error(Errc::invalid_parameter, "z must be odd");
  Cor2Bounds b;
  b.part1_sq = make_rational(t, z);
  const BigInt T = t, Z = z;
  b.part2_sq = make_rational(4 * (T + 6 * T * T * T - 6 * T * T * Z), BigInt(9 * T - 5 * Z));
  return b;
}

std::int64_t companion_dilation(const NormalForm& nf) { return nf.has_generalized() ? profile(nf).n_tilde : 24; }

NormalForm build_companion_f(const NormalForm& nf, std::int64_t p, std::int64_t a) {
  if (!is_prime(p)) throw Error(Errc::invalid_parameter, std::to_string(p) + " is not prime");
  if (a < 1) throw Error(Errc::invalid_parameter, "a must be positive");
  const std::int64_t pa = ipow(p, static_cast<unsigned>(a));
  const std::int64_t m = companion_dilation(nf);
  EtaExpr f;
  if (!nf.has_generalized()) {
    for (const auto& t : nf.denominator) {
      const std::int64_t d = checked_mul(m, t.delta);
      f.times(EtaBase::ordinary(d), t.exponent * pa).times(EtaBase::ordinary(checked_mul(d, pa)), -t.exponent);
    }
    return normalize(f);
  }
  auto pair = [&](std::int64_t gamma, HalfInteger e) {
    const std::int64_t d = checked_mul(m, gamma);
    f.times(EtaBase::general(d, 0), e * pa).times(EtaBase::general(checked_mul(d, pa), 0), -e);
  };
  for (const auto& t : nf.denominator) pair(t.delta, HalfInteger::from_twice(t.exponent));
  for (const auto& t : nf.generic_denominator) pair(t.delta, t.exponent);
  for (const auto& t : nf.half_numerator) pair(t.delta, t.exponent);
  for (const auto& t : nf.half_denominator) pair(t.delta / 2, t.exponent);
  for (const auto& t : nf.zero_denominator) pair(t.delta, t.exponent);
  return normalize(f);
}

NormalForm build_companion_F(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j) {
  check_companion_args(p, a, j);
  const NormalForm f = build_companion_f(nf, p, a);
  return multiply(dilate(nf, companion_dilation(nf)), power(f, ipow(p, static_cast<unsigned>(j))));
}

VerificationResult verify_unit_lemma(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j,
                                     std::size_t T) {
  check_companion_args(p, a, j);
  if (T < 1) throw Error(Errc::invalid_parameter, "T must be >= 1");
  const NormalForm fp = power(build_companion_f(nf, p, a), ipow(p, static_cast<unsigned>(j)));
  const CoefficientRing ring = congruence_ring(p, j);
  return compare(expand(fp, T, ring), QSeries::one(ring, T), T);
}

VerificationResult verify_F_congruence(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j,
                                       std::size_t T) {
  check_companion_args(p, a, j);
  if (T < 1) throw Error(Errc::invalid_parameter, "T must be >= 1");
  const CoefficientRing ring = congruence_ring(p, j);
  const std::int64_t m = companion_dilation(nf);
  const QSeries lhs = expand(build_companion_F(nf, p, a, j), T, ring);
  const QSeries rhs = dilate(expand(nf, T / static_cast<std::size_t>(m) + 1, ring), m, T);
  return compare(lhs, rhs, T);
}

CompanionWeight companion_weight(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j) {
  check_companion_args(p, a, j);
  CompanionWeight w;
  const Rational per_power = profile(build_companion_f(nf, p, a)).weight;
  w.weight = profile(nf).weight + per_power * Rational(big_pow(p, j));
  w.weight.canonicalize();
  w.integral = is_integer(w.weight);
  if (!w.integral && p == 2 && j == 0)
    w.warning = "weight " + to_string(w.weight) + " is not an integer for p = 2, j = 0";
  else if (!w.integral)
    w.warning = "weight " + to_string(w.weight) + " is not an integer";
  return w;
}

std::string verdict_to_json(const LacunarityVerdict& v, const std::string& expr) {
  using detail::json;
  json doc;
  doc["expr"] = expr;
  doc["p"] = v.p;
  doc["a"] = v.a;
  doc["criterion"] = criterion_name(v.criterion);
  doc["bound_sq"] = detail::rational_json(v.bound_sq);
  doc["positivity"] = v.positivity ? detail::rational_json(*v.positivity) : json(nullptr);
  doc["satisfied"] = v.satisfied;
  doc["reason"] = v.reason;
  return doc.dump();
}

}  // namespace etalab
