#include "etalab/modform.hpp"

#include <algorithm>
#include <map>

#include "etalab/error.hpp"
#include "json_util.hpp"

namespace etalab {

namespace {

// Signed (delta, g, r) triples with ordinary factors entering as eta_{delta,0}^{r/2}.
struct Gamma1Term {
  std::int64_t delta;
  std::int64_t g;
  Rational r;
};

std::vector<Gamma1Term> gamma1_terms(const NormalForm& nf) {
  std::vector<Gamma1Term> out;
  for (const auto& t : nf.numerator) out.push_back({t.delta, 0, make_rational(t.exponent, 2)});
  for (const auto& t : nf.denominator) out.push_back({t.delta, 0, make_rational(-t.exponent, 2)});
  auto add = [&](const std::vector<GeneralizedTerm>& terms, int sign) {
    for (const auto& t : terms) out.push_back({t.delta, t.g, t.exponent.to_rational() * sign});
  };
  add(nf.generic_numerator, 1);
  add(nf.generic_denominator, -1);
  add(nf.half_numerator, 1);
  add(nf.half_denominator, -1);
  add(nf.zero_numerator, 1);
  add(nf.zero_denominator, -1);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> gamma0_terms(const NormalForm& nf) {
  auto terms = ordinary_exponents(nf);
  if (!terms)
    throw Error(Errc::invalid_group, "forms with generalized factors eta_{d,g}, 0 < g < d/2, need Gamma1");
  return *terms;
}

void require_level(const NormalForm& nf, std::int64_t N) {
  if (N < 1) throw Error(Errc::invalid_level, "level must be positive");
  for (const auto& t : gamma1_terms(nf))
    if (N % t.delta != 0)
      throw Error(Errc::invalid_level, std::to_string(t.delta) + " does not divide N = " + std::to_string(N));
}

std::int64_t lift_unit(std::int64_t residue, std::int64_t modulus, std::int64_t N) {
  for (std::int64_t c = residue; c <= N; c += modulus)
    if (gcd(c, N) == 1) return c;
  throw Error(Errc::invalid_cusp, "no unit lift for residue " + std::to_string(residue));
}

}  // namespace

const char* group_name(Group g) { return g == Group::gamma0 ? "Gamma0" : "Gamma1"; }

std::string to_string(const Cusp& cusp) {
  if (const auto* c0 = std::get_if<Cusp0>(&cusp)) return std::to_string(c0->c) + "/" + std::to_string(c0->d);
  const auto& c1 = std::get<Cusp1>(cusp);
  return std::to_string(c1.lambda) + "/(" + std::to_string(c1.mu) + "*" + std::to_string(c1.epsilon) + ")";
}

std::vector<Cusp0> cusp_set_gamma0(std::int64_t N) {
  if (N < 1) throw Error(Errc::invalid_level, "level must be positive");
  std::vector<Cusp0> out;
  for (std::int64_t d : divisors(N)) {
    const std::int64_t m = gcd(d, N / d);
    for (std::int64_t r = 1; r <= m; ++r) {
      if (gcd(r, m) != 1) continue;
      out.push_back({lift_unit(r, m, N), d});
    }
  }
  return out;
}

std::int64_t gamma0_cusp_count(std::int64_t N) {
  std::int64_t total = 0;
  for (std::int64_t d : divisors(N)) total += euler_phi(gcd(d, N / d));
  return total;
}

std::vector<Cusp1> cusp_set_gamma1(std::int64_t N, std::size_t max_cusps) {
  if (N < 1) throw Error(Errc::invalid_level, "level must be positive");
  std::vector<std::int64_t> units;
  for (std::int64_t x = 1; x <= N; ++x)
    if (gcd(x, N) == 1) units.push_back(x);
  std::vector<Cusp1> out;
  for (std::int64_t eps : divisors(N)) {
    for (std::int64_t lambda : units) {
      for (std::int64_t mu : units) {
        if (gcd(mu, lambda) != 1) continue;
        if (out.size() >= max_cusps)
          throw Error(Errc::cap_exceeded, "Gamma1(" + std::to_string(N) + ") cusp list exceeds " +
                                              std::to_string(max_cusps) + " entries; use cusp classes");
        out.push_back({lambda, mu, eps});
      }
    }
  }
  return out;
}

std::vector<Cusp1> cusp_classes_gamma1(const NormalForm& nf, std::int64_t N) {
  require_level(nf, N);
  const auto terms = gamma1_terms(nf);
  std::vector<Cusp1> out;
  for (std::int64_t eps : divisors(N)) {
    std::int64_t m = 1;
    for (const auto& t : terms) {
      const std::int64_t e = gcd(t.delta, eps);
      m = lcm(m, e / gcd(t.g, e));
    }
    for (std::int64_t u = 1; u <= m; ++u)
      if (gcd(u, m) == 1) out.push_back({lift_unit(u, m, N), 1, eps});
  }
  return out;
}

ModularityStatus modularity_check(const NormalForm& nf, std::int64_t N, Group group) {
  require_level(nf, N);
  ModularityStatus s;
  s.group = group;
  s.level = N;
  if (group == Group::gamma0) {
    const auto terms = gamma0_terms(nf);
    std::int64_t twice_weight = 0;
    Rational sum_delta = 0, sum_codelta = 0;
    for (const auto& [delta, r] : terms) {
      twice_weight += r;
      sum_delta += Rational(static_cast<long>(checked_mul(delta, r)));
      sum_codelta += Rational(static_cast<long>(checked_mul(N / delta, r)));
    }
    s.conditions.push_back({"integer weight", make_rational(twice_weight, 2), 1, twice_weight % 2 == 0});
    s.conditions.push_back({"sum delta r", sum_delta, 24, is_multiple_of(sum_delta, 24)});
    s.conditions.push_back({"sum (N/delta) r", sum_codelta, 24, is_multiple_of(sum_codelta, 24)});
  } else {
    Rational sum_p2 = 0, sum_level = 0;
    for (const auto& t : gamma1_terms(nf)) {
      sum_p2 += Rational(static_cast<long>(t.delta)) * bernoulli_p2(make_rational(t.g, t.delta)) * t.r;
      sum_level += make_rational(N, 6 * t.delta) * t.r;
    }
    sum_p2.canonicalize();
    sum_level.canonicalize();
    s.conditions.push_back({"sum delta P2(g/delta) r", sum_p2, 2, is_multiple_of(sum_p2, 2)});
    s.conditions.push_back({"sum N/(6 delta) r", sum_level, 2, is_multiple_of(sum_level, 2)});
  }
  s.satisfied = std::all_of(s.conditions.begin(), s.conditions.end(), [](const auto& c) { return c.satisfied; });
  return s;
}

int kronecker_chi(const NormalForm& nf, const BigInt& d) {
  const auto terms = gamma0_terms(nf);
  std::int64_t twice_weight = 0;
  BigInt num = 1, den = 1;
  for (const auto& [delta, r] : terms) {
    twice_weight += r;
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(delta), static_cast<unsigned long>(r < 0 ? -r : r));
    (r > 0 ? num : den) *= power;
  }
  if (twice_weight % 2 != 0) throw Error(Errc::invalid_parameter, "the character needs integer weight");
  const std::int64_t k = twice_weight / 2;
  // (den^{-1} / d) = (den / d) because (den / d)^2 = 1 whenever it is nonzero
  BigInt s = num * den;
  if (k % 2 != 0) s = -s;
  return kronecker(s, d);
}

Rational order_at_cusp(const NormalForm& nf, std::int64_t N, const Cusp0& cusp) {
  require_level(nf, N);
  if (cusp.d < 1 || N % cusp.d != 0 || gcd(cusp.c, cusp.d) != 1)
    throw Error(Errc::invalid_cusp, to_string(Cusp(cusp)) + " is not a Gamma0(" + std::to_string(N) + ") cusp");
  Rational sum = 0;
  for (const auto& [delta, r] : gamma0_terms(nf)) {
    const std::int64_t g = gcd(cusp.d, delta);
    sum += make_rational(checked_mul(checked_mul(g, g), r), delta);
  }
  Rational out = sum * make_rational(N, checked_mul(24, checked_mul(cusp.d, gcd(cusp.d, N / cusp.d))));
  out.canonicalize();
  return out;
}

Rational order_at_cusp(const NormalForm& nf, std::int64_t N, const Cusp1& cusp) {
  require_level(nf, N);
  const bool valid = cusp.epsilon >= 1 && N % cusp.epsilon == 0 && cusp.lambda >= 1 && cusp.lambda <= N &&
                     cusp.mu >= 1 && cusp.mu <= N && gcd(cusp.mu, cusp.lambda) == 1 && gcd(cusp.lambda, N) == 1 &&
                     gcd(cusp.mu, N) == 1;
  if (!valid)
    throw Error(Errc::invalid_cusp, to_string(Cusp(cusp)) + " is not a Gamma1(" + std::to_string(N) + ") cusp");
  Rational sum = 0;
  for (const auto& t : gamma1_terms(nf)) {
    const std::int64_t e = gcd(t.delta, cusp.epsilon);
    sum += make_rational(e * e, checked_mul(t.delta, cusp.epsilon)) *
           bernoulli_p2(make_rational(checked_mul(cusp.lambda, t.g), e)) * t.r;
  }
  Rational out = sum * make_rational(N, 2);
  out.canonicalize();
  return out;
}

Rational order_at_cusp(const NormalForm& nf, std::int64_t N, const Cusp& cusp) {
  return std::visit([&](const auto& c) { return order_at_cusp(nf, N, c); }, cusp);
}

HolomorphyReport holomorphy_report(const NormalForm& nf, std::int64_t N, Group group, bool require_modularity) {
  HolomorphyReport rep;
  rep.group = group;
  rep.level = N;
  rep.weight = profile(nf).weight;
  rep.modularity = modularity_check(nf, N, group);
  if (require_modularity && !rep.modularity.satisfied) {
    std::string failed;
    for (const auto& c : rep.modularity.conditions)
      if (!c.satisfied) failed += (failed.empty() ? "" : ", ") + c.name + " = " + to_string(c.value);
    throw Error(Errc::not_modular, print(nf) + " fails the " + group_name(group) + "(" + std::to_string(N) +
                                       ") modularity conditions: " + failed);
  }
  if (group == Group::gamma0) {
    std::map<std::int64_t, Rational> by_d;  // the order depends on c/d only through d
    for (const auto& c : cusp_set_gamma0(N)) {
      auto it = by_d.find(c.d);
      if (it == by_d.end()) it = by_d.emplace(c.d, order_at_cusp(nf, N, c)).first;
      rep.orders.push_back({c, it->second});
    }
  } else {
    rep.representatives_may_repeat = true;
    for (const auto& c : cusp_classes_gamma1(nf, N)) rep.orders.push_back({c, order_at_cusp(nf, N, c)});
  }
  rep.min_order = rep.orders.front().order;
  for (std::size_t i = 1; i < rep.orders.size(); ++i) {
    if (rep.orders[i].order < rep.min_order) {
      rep.min_order = rep.orders[i].order;
      rep.witness = i;
    }
  }
  rep.holomorphic = rep.min_order >= 0;
  return rep;
}

HolomorphyReport dilated_holomorphy_report(const NormalForm& nf) {
  const QuotientProfile p = profile(nf);
  const std::int64_t m = nf.has_generalized() ? p.n_tilde : 24;
  const NormalForm dilated = dilate(nf, m);
  const Group group = ordinary_exponents(dilated) ? Group::gamma0 : Group::gamma1;
  return holomorphy_report(dilated, p.level, group);
}

std::string report_to_json(const HolomorphyReport& report) {
  using detail::json;
  using detail::rational_json;
  json cusps = json::array();
  for (const auto& co : report.orders)
    cusps.push_back({{"repr", to_string(co.cusp)},
                     {"order_num", detail::integer_json(co.order.get_num())},
                     {"order_den", detail::integer_json(co.order.get_den())}});
  json doc;
  doc["level"] = report.level;
  doc["group"] = group_name(report.group);
  doc["weight"] = rational_json(report.weight);
  doc["cusps"] = std::move(cusps);
  doc["min_order"] = rational_json(report.min_order);
  doc["holomorphic"] = report.holomorphic;
  return doc.dump();
}

}  // namespace etalab
